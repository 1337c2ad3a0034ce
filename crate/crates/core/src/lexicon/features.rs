use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Which dictionary an entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lang {
    Ar,
    Fr,
}

impl Lang {
    pub fn as_str(self) -> &'static str {
        match self {
            Lang::Ar => "ar",
            Lang::Fr => "fr",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    N,
    A,
    Prep,
    Det,
    Num,
}

impl Category {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "N" => Category::N,
            "A" => Category::A,
            "PREP" => Category::Prep,
            "DET" => Category::Det,
            "NUM" => Category::Num,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::N => "N",
            Category::A => "A",
            Category::Prep => "PREP",
            Category::Det => "DET",
            Category::Num => "NUM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    LieuSport,
    Toponyme,
    Ville,
    Pays,
    Region,
    Perso,
    Fonction,
    CatGeo,
    PR,
    DETZ,
    Apostrophe,
    Demonym,
    Mois,
    DetOpt,
}

impl Flag {
    pub const ALL: [Flag; 14] = [
        Flag::LieuSport,
        Flag::Toponyme,
        Flag::Ville,
        Flag::Pays,
        Flag::Region,
        Flag::Perso,
        Flag::Fonction,
        Flag::CatGeo,
        Flag::PR,
        Flag::DETZ,
        Flag::Apostrophe,
        Flag::Demonym,
        Flag::Mois,
        Flag::DetOpt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::LieuSport => "LieuSport",
            Flag::Toponyme => "Toponyme",
            Flag::Ville => "Ville",
            Flag::Pays => "Pays",
            Flag::Region => "Region",
            Flag::Perso => "Perso",
            Flag::Fonction => "Fonction",
            Flag::CatGeo => "Cat_Geo",
            Flag::PR => "PR",
            Flag::DETZ => "DETZ",
            Flag::Apostrophe => "Apostrophe",
            Flag::Demonym => "Demonym",
            Flag::Mois => "Mois",
            Flag::DetOpt => "DetOpt",
        }
    }

    /// Case-insensitive; the published dictionaries write both `Apostrophe`
    /// and `apostrophe`.
    pub fn parse(s: &str) -> Option<Self> {
        Flag::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s))
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

/// A set of [`Flag`]s.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagSet(u16);

impl FlagSet {
    pub const fn empty() -> Self {
        FlagSet(0)
    }

    pub fn insert(&mut self, flag: Flag) {
        self.0 |= flag.bit();
    }

    pub fn with(mut self, flag: Flag) -> Self {
        self.insert(flag);
        self
    }

    pub fn contains(self, flag: Flag) -> bool {
        self.0 & flag.bit() != 0
    }

    pub fn contains_all(self, other: FlagSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn union(self, other: FlagSet) -> FlagSet {
        FlagSet(self.0 | other.0)
    }

    pub fn intersection(self, other: FlagSet) -> FlagSet {
        FlagSet(self.0 & other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Flag> {
        Flag::ALL.into_iter().filter(move |f| self.contains(*f))
    }

    /// Ville, Pays and Region are kinds of Toponyme.
    pub fn closed(mut self) -> Self {
        if self.contains(Flag::Ville) || self.contains(Flag::Pays) || self.contains(Flag::Region) {
            self.insert(Flag::Toponyme);
        }
        self
    }
}

impl FromIterator<Flag> for FlagSet {
    fn from_iter<I: IntoIterator<Item = Flag>>(iter: I) -> Self {
        let mut set = FlagSet::empty();
        for f in iter {
            set.insert(f);
        }
        set
    }
}

impl fmt::Debug for FlagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Flag::name)).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gender {
    Masculine,
    Feminine,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Masculine => "m",
            Gender::Feminine => "f",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Number {
    Singular,
    Plural,
}

impl Number {
    pub fn as_str(self) -> &'static str {
        match self {
            Number::Singular => "s",
            Number::Plural => "p",
        }
    }
}

/// Category, flags and optional agreement features of one reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureSet {
    pub category: Category,
    pub flags: FlagSet,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
}

impl FeatureSet {
    pub fn new(category: Category) -> Self {
        FeatureSet {
            category,
            flags: FlagSet::empty(),
            gender: None,
            number: None,
        }
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(flag)
    }

    /// Overlay inflection features: flags are added, gender and number from
    /// `extra` win when present.
    pub fn merged(&self, extra: &PartialFeatures) -> FeatureSet {
        FeatureSet {
            category: self.category,
            flags: self.flags.union(extra.flags).closed(),
            gender: extra.gender.or(self.gender),
            number: extra.number.or(self.number),
        }
    }
}

/// Features emitted by a paradigm rule; no category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PartialFeatures {
    pub flags: FlagSet,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
}

impl PartialFeatures {
    pub fn is_empty(&self) -> bool {
        self.flags.is_empty() && self.gender.is_none() && self.number.is_none()
    }
}

/// A lexical test used by grammar arcs: category plus required flags and
/// optional required gender/number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub category: Category,
    pub flags: FlagSet,
    pub gender: Option<Gender>,
    pub number: Option<Number>,
}

impl Constraint {
    pub fn category(category: Category) -> Self {
        Constraint {
            category,
            flags: FlagSet::empty(),
            gender: None,
            number: None,
        }
    }

    pub fn with(mut self, flag: Flag) -> Self {
        self.flags.insert(flag);
        self
    }

    pub fn accepts(&self, features: &FeatureSet) -> bool {
        features.category == self.category
            && features.flags.contains_all(self.flags)
            && self.gender.is_none_or(|g| features.gender == Some(g))
            && self.number.is_none_or(|n| features.number == Some(n))
    }

    /// Parse `N+LieuSport+f` style text.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut items = text.split('+').map(str::trim);
        let cat = items.next().unwrap_or_default();
        let category =
            Category::parse(cat).ok_or_else(|| alloc::format!("unknown category `{cat}`"))?;
        let mut c = Constraint::category(category);
        for item in items {
            match parse_feature_item(item)? {
                FeatureItem::Flag(f) => c.flags.insert(f),
                FeatureItem::Gender(g) => set_once(&mut c.gender, g, "gender")?,
                FeatureItem::Number(n) => set_once(&mut c.number, n, "number")?,
                FeatureItem::Attr(k, _) => {
                    return Err(alloc::format!(
                        "attribute `{k}` not allowed in a constraint"
                    ))
                }
            }
        }
        Ok(c)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.category.as_str())?;
        for flag in self.flags.iter() {
            write!(f, "+{}", flag.name())?;
        }
        if let Some(g) = self.gender {
            write!(f, "+{}", g.as_str())?;
        }
        if let Some(n) = self.number {
            write!(f, "+{}", n.as_str())?;
        }
        Ok(())
    }
}

pub(crate) enum FeatureItem<'a> {
    Flag(Flag),
    Gender(Gender),
    Number(Number),
    Attr(&'a str, &'a str),
}

pub(crate) fn parse_feature_item(item: &str) -> Result<FeatureItem<'_>, String> {
    if let Some((key, value)) = item.split_once('=') {
        return Ok(FeatureItem::Attr(key.trim(), value.trim()));
    }
    Ok(match item {
        "m" => FeatureItem::Gender(Gender::Masculine),
        "f" => FeatureItem::Gender(Gender::Feminine),
        "s" => FeatureItem::Number(Number::Singular),
        "p" => FeatureItem::Number(Number::Plural),
        "" => return Err("empty feature".into()),
        other => FeatureItem::Flag(
            Flag::parse(other).ok_or_else(|| alloc::format!("unknown feature `{other}`"))?,
        ),
    })
}

pub(crate) fn set_once<T: PartialEq + Copy>(
    slot: &mut Option<T>,
    value: T,
    what: &str,
) -> Result<(), String> {
    match slot {
        Some(old) if *old != value => Err(alloc::format!("conflicting {what} values")),
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

/// Writes `+flag+g+n` for the non-category part of a feature set.
pub(crate) fn write_features(
    out: &mut String,
    flags: FlagSet,
    gender: Option<Gender>,
    number: Option<Number>,
) {
    for flag in flags.iter() {
        out.push('+');
        out.push_str(flag.name());
    }
    if let Some(g) = gender {
        out.push('+');
        out.push_str(g.as_str());
    }
    if let Some(n) = number {
        out.push('+');
        out.push_str(n.as_str());
    }
}

/// Split on `sep` outside double quotes.
pub(crate) fn split_unquoted(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut in_quotes = false;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '"' {
            in_quotes = !in_quotes;
        } else if c == sep && !in_quotes {
            parts.push(&text[start..i]);
            start = i + c.len_utf8();
        }
    }
    parts.push(&text[start..]);
    parts
}

pub(crate) fn unquote(s: &str) -> Result<&str, String> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('"') {
        rest.strip_suffix('"')
            .filter(|inner| !inner.contains('"'))
            .ok_or_else(|| alloc::format!("unterminated quote in `{s}`"))
    } else if s.contains('"') {
        Err(alloc::format!("stray quote in `{s}`"))
    } else {
        Ok(s)
    }
}
