//! Plain-text molecule catalogs.
//!
//! ```text
//! # any comment
//! signature factors 3 caps 1,1,1
//! count 57
//! (0+,0+,0+)
//! ...
//! ```
//!
//! Entries are canonical serializations, one per line, strictly sorted.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::atom::Signature;
use crate::error::{Error, Result};
use crate::subcomplex::Subcomplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    sig: Signature,
    entries: Vec<Subcomplex>,
}

impl Catalog {
    /// Sorts and deduplicates `entries`, which must all live over `sig`.
    pub fn new(sig: Signature, entries: Vec<Subcomplex>) -> Result<Self> {
        if entries.iter().any(|x| *x.signature() != sig) {
            return Err(Error::SignatureMismatch);
        }
        let mut keyed: Vec<(String, Subcomplex)> =
            entries.into_iter().map(|x| (x.to_string(), x)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        Ok(Catalog { sig, entries: keyed.into_iter().map(|(_, x)| x).collect() })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn entries(&self) -> &[Subcomplex] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# molecule catalog").unwrap();
        writeln!(s, "signature {}", self.sig).unwrap();
        writeln!(s, "count {}", self.entries.len()).unwrap();
        for x in &self.entries {
            writeln!(s, "{x}").unwrap();
        }
        s
    }

    /// Parses a catalog, checking the count line and that entries are
    /// canonical and strictly sorted.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: String| Error::Catalog(format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n, first) = lines.next().ok_or_else(|| Error::Catalog("missing signature line".into()))?;
        let rest = first
            .strip_prefix("signature ")
            .ok_or_else(|| bad(n, "expected `signature ...`".into()))?;
        let sig = parse_signature(rest).map_err(|e| bad(n, e.to_string()))?;
        let (n, second) = lines.next().ok_or_else(|| Error::Catalog("missing count line".into()))?;
        let count: usize = second
            .strip_prefix("count ")
            .and_then(|c| c.trim().parse().ok())
            .ok_or_else(|| bad(n, "expected `count N`".into()))?;
        let mut entries = Vec::new();
        let mut prev: Option<String> = None;
        for (n, line) in lines {
            let x = Subcomplex::parse(sig, line).map_err(|e| bad(n, e.to_string()))?;
            let canon = x.to_string();
            if canon != line {
                return Err(bad(n, format!("not canonical, expected {canon}")));
            }
            if prev.as_deref().is_some_and(|p| p >= line) {
                return Err(bad(n, "entries not strictly sorted".into()));
            }
            prev = Some(canon);
            entries.push(x);
        }
        if entries.len() != count {
            return Err(Error::Catalog(format!("count line says {count}, found {}", entries.len())));
        }
        Ok(Catalog { sig, entries })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Catalog::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))
    }
}

/// Parses the `Display` form of a signature: `factors N [twists ..] [caps ..]`.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let bad = || Error::Catalog(format!("bad signature `{text}`"));
    let words: Vec<&str> = text.split_whitespace().collect();
    let list = |s: &str| -> Result<Vec<u32>> {
        s.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| bad())).collect()
    };
    let mut it = words.chunks(2);
    let arity = match it.next() {
        Some(["factors", n]) => n.parse::<usize>().map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    let mut sig = Signature::new(arity)?;
    for pair in it {
        match pair {
            ["twists", t] => sig = sig.with_twists(&list(t)?)?,
            ["caps", c] => sig = sig.with_caps(&list(c)?)?,
            _ => return Err(bad()),
        }
    }
    Ok(sig)
}
