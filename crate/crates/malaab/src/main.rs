use std::path::PathBuf;

fn main() {
    let env_bundle = std::env::var_os(malaab::cli::BUNDLE_ENV).map(PathBuf::from);
    let code = malaab::cli::run(
        std::env::args_os(),
        env_bundle.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
