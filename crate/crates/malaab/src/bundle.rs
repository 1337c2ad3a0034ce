//! The compiled resource bundle: canonical resource texts in one versioned,
//! checksummed binary file.
//!
//! Layout (integers little-endian):
//!
//! ```text
//! magic "MALAABRB" | u32 version | u32 count
//! count × ( u32 name_len | name | u32 text_len | text )
//! sha256 of everything above (32 bytes)
//! ```
//!
//! The texts are the canonical serializations of the compiled resources, so
//! compiling the same sources twice gives the same bytes.

use malaab_core::resources::Source;
use malaab_core::{ResourceError, Resources, Sources};
use sha2::{Digest, Sha256};

pub const MAGIC: &[u8; 8] = b"MALAABRB";
pub const VERSION: u32 = 1;
const DIGEST_LEN: usize = 32;
const NAMES: [&str; 6] = [
    "ar.dic",
    "fr.dic",
    "paradigms.flx",
    "venues.grammar",
    "translit.tsv",
    "months.tsv",
];

#[derive(Debug, thiserror::Error)]
pub enum BundleError {
    #[error("not a resource bundle (bad magic)")]
    BadMagic,
    #[error("bundle version {0} is not supported (expected {VERSION})")]
    Version(u32),
    #[error("bundle is truncated")]
    Truncated,
    #[error("bundle checksum mismatch")]
    Checksum,
    #[error("bundle section `{0}` is not UTF-8")]
    Utf8(String),
    #[error("bundle holds section `{found}` where `{expected}` belongs")]
    Section {
        expected: &'static str,
        found: String,
    },
    #[error("bundle resources do not compile: {0}")]
    Resources(#[from] ResourceError),
}

fn sources_in_order(s: &Sources) -> [&Source; 6] {
    [
        &s.dict_ar,
        &s.dict_fr,
        &s.paradigms,
        &s.grammar,
        &s.translit,
        &s.months,
    ]
}

fn push_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    let len = u32::try_from(bytes.len()).expect("resource text over 4 GiB");
    out.extend_from_slice(&len.to_le_bytes());
    out.extend_from_slice(bytes);
}

/// Serialize compiled resources.
pub fn encode(resources: &Resources) -> Vec<u8> {
    let canonical = resources.canonical_sources();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(NAMES.len() as u32).to_le_bytes());
    for (name, source) in NAMES.iter().zip(sources_in_order(&canonical)) {
        push_bytes(&mut out, name.as_bytes());
        push_bytes(&mut out, source.text.as_bytes());
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], BundleError> {
        if self.bytes.len() < n {
            return Err(BundleError::Truncated);
        }
        let (head, rest) = self.bytes.split_at(n);
        self.bytes = rest;
        Ok(head)
    }

    fn u32(&mut self) -> Result<u32, BundleError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn text(&mut self, what: &str) -> Result<String, BundleError> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| BundleError::Utf8(what.into()))
    }
}

/// Check and unpack a bundle into its source texts.
pub fn decode_sources(bytes: &[u8]) -> Result<Sources, BundleError> {
    if bytes.len() < MAGIC.len() || &bytes[..MAGIC.len()] != MAGIC {
        return Err(BundleError::BadMagic);
    }
    if bytes.len() < MAGIC.len() + 8 + DIGEST_LEN {
        return Err(BundleError::Truncated);
    }
    let (body, digest) = bytes.split_at(bytes.len() - DIGEST_LEN);
    let mut r = Reader {
        bytes: &body[MAGIC.len()..],
    };
    let version = r.u32()?;
    if version != VERSION {
        return Err(BundleError::Version(version));
    }
    if Sha256::digest(body).as_slice() != digest {
        return Err(BundleError::Checksum);
    }
    let count = r.u32()? as usize;
    if count != NAMES.len() {
        return Err(BundleError::Truncated);
    }
    let mut texts = Vec::with_capacity(count);
    for expected in NAMES {
        let found = r.text("name")?;
        if found != expected {
            return Err(BundleError::Section { expected, found });
        }
        texts.push(Source::new(expected, r.text(expected)?));
    }
    if !r.bytes.is_empty() {
        return Err(BundleError::Truncated);
    }
    let mut it = texts.into_iter();
    let mut next = || it.next().expect("six sections");
    Ok(Sources {
        dict_ar: next(),
        dict_fr: next(),
        paradigms: next(),
        grammar: next(),
        translit: next(),
        months: next(),
    })
}

/// Unpack and compile a bundle.
pub fn decode(bytes: &[u8]) -> Result<Resources, BundleError> {
    Ok(Resources::compile(&decode_sources(bytes)?)?)
}
