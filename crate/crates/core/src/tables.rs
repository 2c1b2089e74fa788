//! Synonym dictionary and particle property tables.
//!
//! All three files are whitespace-separated columns with whole-line `#`
//! comments:
//!
//! * `dict-syn.txt`: one synonym group per line, key (PDG) name first. Line
//!   order is the dictionary rank used by [`OrderingMode::Dict`].
//! * `particles.txt`: `name q3 b3 S C B T`, charge and baryon number in
//!   thirds.
//! * `leptons.txt`: `name Le Lmu Ltau`.
//!
//! [`OrderingMode::Dict`]: crate::canon::OrderingMode::Dict

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::io::{self, Read};
use std::ops::{Add, Neg};
use std::str::FromStr;

use thiserror::Error;

pub const BUNDLED_DICTIONARY: &str = include_str!("../data/dict-syn.txt");
pub const BUNDLED_PARTICLES: &str = include_str!("../data/particles.txt");
pub const BUNDLED_LEPTONS: &str = include_str!("../data/leptons.txt");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("synonym `{name}` on line {line} already appears on line {first_line}")]
    DuplicateSynonym {
        name: String,
        line: usize,
        first_line: usize,
    },
    #[error("dictionary has no entries")]
    EmptyDictionary,
    #[error("{file} line {line}: {reason}")]
    MalformedRow {
        file: &'static str,
        line: usize,
        reason: String,
    },
    #[error("{file} line {line}: duplicate row for `{name}`")]
    DuplicateRow {
        file: &'static str,
        line: usize,
        name: String,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Meaningful lines of a table file as `(1-based line number, fields)`.
fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn read_all(mut source: impl Read) -> io::Result<String> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Ok(text)
}

/// Ordered synonym groups. The first name of each group is its key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    entries: Vec<Vec<String>>,
    index: HashMap<String, usize>,
}

impl Dictionary {
    pub fn parse(text: &str) -> Result<Dictionary, TableError> {
        let mut entries: Vec<Vec<String>> = Vec::new();
        let mut index = HashMap::new();
        let mut lines = Vec::new();
        for (line, fields) in rows(text) {
            let rank = entries.len();
            for &name in &fields {
                match index.entry(name.to_string()) {
                    Entry::Occupied(e) => {
                        return Err(TableError::DuplicateSynonym {
                            name: name.to_string(),
                            line,
                            first_line: lines.get(*e.get()).copied().unwrap_or(line),
                        })
                    }
                    Entry::Vacant(e) => {
                        e.insert(rank);
                    }
                }
            }
            entries.push(fields.iter().map(|s| s.to_string()).collect());
            lines.push(line);
        }
        if entries.is_empty() {
            return Err(TableError::EmptyDictionary);
        }
        Ok(Dictionary { entries, index })
    }

    pub fn from_reader(source: impl Read) -> Result<Dictionary, TableError> {
        Dictionary::parse(&read_all(source)?)
    }

    pub fn bundled() -> Dictionary {
        Dictionary::parse(BUNDLED_DICTIONARY).expect("bundled dictionary is valid")
    }

    /// 0-based line rank of the group containing `name`.
    pub fn rank(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Key name of the group containing `name`.
    pub fn key_of(&self, name: &str) -> Option<&str> {
        self.rank(name).map(|r| self.entries[r][0].as_str())
    }

    /// Key name for `name`, or `name` itself when it is not listed.
    pub fn resolve<'a>(&'a self, name: &'a str) -> &'a str {
        self.key_of(name).unwrap_or(name)
    }

    pub fn is_key(&self, name: &str) -> bool {
        self.key_of(name) == Some(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &[String]> {
        self.entries.iter().map(Vec::as_slice)
    }
}

/// One of the nine conserved quantities tracked per particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// Electric charge in units of e/3.
    Charge,
    /// Baryon number in units of 1/3.
    Baryon,
    Strangeness,
    Charm,
    Bottomness,
    Topness,
    ElectronLepton,
    MuonLepton,
    TauLepton,
}

impl Component {
    pub const ALL: [Component; 9] = [
        Component::Charge,
        Component::Baryon,
        Component::Strangeness,
        Component::Charm,
        Component::Bottomness,
        Component::Topness,
        Component::ElectronLepton,
        Component::MuonLepton,
        Component::TauLepton,
    ];

    /// Short law name used on the command line and in logs.
    pub fn law_name(self) -> &'static str {
        match self {
            Component::Charge => "charge",
            Component::Baryon => "baryon",
            Component::Strangeness => "S",
            Component::Charm => "C",
            Component::Bottomness => "B",
            Component::Topness => "T",
            Component::ElectronLepton => "Le",
            Component::MuonLepton => "Lmu",
            Component::TauLepton => "Ltau",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.law_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown law `{0}` (expected one of charge, baryon, S, C, B, T, Le, Lmu, Ltau)")]
pub struct UnknownLaw(pub String);

impl FromStr for Component {
    type Err = UnknownLaw;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Component::ALL
            .into_iter()
            .find(|c| c.law_name() == s)
            .ok_or_else(|| UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct QuantumVector {
    pub q3: i32,
    pub b3: i32,
    pub s: i32,
    pub c: i32,
    pub b: i32,
    pub t: i32,
    pub le: i32,
    pub lmu: i32,
    pub ltau: i32,
}

impl QuantumVector {
    pub fn get(&self, component: Component) -> i32 {
        match component {
            Component::Charge => self.q3,
            Component::Baryon => self.b3,
            Component::Strangeness => self.s,
            Component::Charm => self.c,
            Component::Bottomness => self.b,
            Component::Topness => self.t,
            Component::ElectronLepton => self.le,
            Component::MuonLepton => self.lmu,
            Component::TauLepton => self.ltau,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == QuantumVector::default()
    }
}

impl Add for QuantumVector {
    type Output = QuantumVector;

    fn add(self, o: QuantumVector) -> QuantumVector {
        QuantumVector {
            q3: self.q3 + o.q3,
            b3: self.b3 + o.b3,
            s: self.s + o.s,
            c: self.c + o.c,
            b: self.b + o.b,
            t: self.t + o.t,
            le: self.le + o.le,
            lmu: self.lmu + o.lmu,
            ltau: self.ltau + o.ltau,
        }
    }
}

impl Neg for QuantumVector {
    type Output = QuantumVector;

    fn neg(self) -> QuantumVector {
        QuantumVector {
            q3: -self.q3,
            b3: -self.b3,
            s: -self.s,
            c: -self.c,
            b: -self.b,
            t: -self.t,
            le: -self.le,
            lmu: -self.lmu,
            ltau: -self.ltau,
        }
    }
}

/// Quantum numbers keyed by dictionary key name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyTable {
    rows: HashMap<String, QuantumVector>,
    warnings: Vec<String>,
}

fn parse_ints<const N: usize>(
    file: &'static str,
    line: usize,
    fields: &[&str],
) -> Result<[i32; N], TableError> {
    if fields.len() != N + 1 {
        return Err(TableError::MalformedRow {
            file,
            line,
            reason: format!("expected {} columns, found {}", N + 1, fields.len()),
        });
    }
    let mut out = [0; N];
    for (slot, field) in out.iter_mut().zip(&fields[1..]) {
        *slot = field.parse().map_err(|_| TableError::MalformedRow {
            file,
            line,
            reason: format!("`{field}` is not an integer"),
        })?;
    }
    Ok(out)
}

impl PropertyTable {
    /// Merges the hadronic and lepton tables, resolving every name to its
    /// dictionary key first.
    pub fn parse(
        props: &str,
        leptons: &str,
        dict: &Dictionary,
    ) -> Result<PropertyTable, TableError> {
        let mut hadronic: HashMap<String, ([i32; 6], usize)> = HashMap::new();
        let mut order = Vec::new();
        for (line, fields) in rows(props) {
            let values = parse_ints::<6>("particles", line, &fields)?;
            let key = dict.resolve(fields[0]).to_string();
            match hadronic.entry(key.clone()) {
                Entry::Occupied(_) => {
                    return Err(TableError::DuplicateRow {
                        file: "particles",
                        line,
                        name: key,
                    })
                }
                Entry::Vacant(e) => {
                    e.insert((values, line));
                    order.push(key);
                }
            }
        }
        let mut lepton: HashMap<String, [i32; 3]> = HashMap::new();
        for (line, fields) in rows(leptons) {
            let values = parse_ints::<3>("leptons", line, &fields)?;
            let key = dict.resolve(fields[0]).to_string();
            match lepton.entry(key.clone()) {
                Entry::Occupied(_) => {
                    return Err(TableError::DuplicateRow {
                        file: "leptons",
                        line,
                        name: key,
                    })
                }
                Entry::Vacant(e) => {
                    e.insert(values);
                    if !hadronic.contains_key(&key) {
                        order.push(key);
                    }
                }
            }
        }

        let mut table = PropertyTable::default();
        for key in order {
            let [q3, b3, s, c, b, t] = hadronic.get(&key).map(|(v, _)| *v).unwrap_or_default();
            let [le, lmu, ltau] = lepton.get(&key).copied().unwrap_or_default();
            if !dict.is_key(&key) {
                table.warnings.push(format!(
                    "`{key}` has properties but is not a dictionary key"
                ));
            }
            table.rows.insert(
                key,
                QuantumVector {
                    q3,
                    b3,
                    s,
                    c,
                    b,
                    t,
                    le,
                    lmu,
                    ltau,
                },
            );
        }
        Ok(table)
    }

    pub fn from_readers(
        props: impl Read,
        leptons: impl Read,
        dict: &Dictionary,
    ) -> Result<PropertyTable, TableError> {
        PropertyTable::parse(&read_all(props)?, &read_all(leptons)?, dict)
    }

    pub fn bundled(dict: &Dictionary) -> PropertyTable {
        PropertyTable::parse(BUNDLED_PARTICLES, BUNDLED_LEPTONS, dict)
            .expect("bundled tables are valid")
    }

    pub fn get(&self, key: &str) -> Option<&QuantumVector> {
        self.rows.get(key)
    }

    pub fn insert(&mut self, key: impl Into<String>, qv: QuantumVector) {
        self.rows.insert(key.into(), qv);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.rows.keys().map(String::as_str)
    }

    /// Non-fatal problems found while loading.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// Dictionary plus property table, loaded together.
#[derive(Debug, Clone)]
pub struct Tables {
    pub dictionary: Dictionary,
    pub properties: PropertyTable,
}

impl Tables {
    pub fn bundled() -> Tables {
        let dictionary = Dictionary::bundled();
        let properties = PropertyTable::bundled(&dictionary);
        Tables {
            dictionary,
            properties,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_keys_and_ranks() {
        let dict = Dictionary::parse("# leptons\n\ne+ E+ POSITRON\r\ntau+ TAU+\n  nu(tau) NUTAU\n")
            .unwrap();
        assert_eq!(dict.len(), 3);
        assert_eq!(dict.key_of("POSITRON"), Some("e+"));
        assert_eq!(dict.key_of("E+"), Some("e+"));
        assert_eq!(dict.rank("e+"), Some(0));
        assert!(dict.rank("tau+") < dict.rank("nu(tau)"));
        assert_eq!(dict.resolve("NUTAU"), "nu(tau)");
        assert_eq!(dict.resolve("QUARK"), "QUARK");
        assert!(dict.is_key("tau+"));
        assert!(!dict.is_key("TAU+"));
    }

    #[test]
    fn empty_dictionary() {
        assert!(matches!(
            Dictionary::parse(""),
            Err(TableError::EmptyDictionary)
        ));
        assert!(matches!(
            Dictionary::parse("# only\n\n"),
            Err(TableError::EmptyDictionary)
        ));
    }

    #[test]
    fn duplicate_synonym() {
        let err = Dictionary::parse("e+ E+\nmu+ E+\n").unwrap_err();
        match err {
            TableError::DuplicateSynonym {
                name,
                line,
                first_line,
            } => {
                assert_eq!((name.as_str(), line, first_line), ("E+", 2, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Dictionary::parse("a a\n"),
            Err(TableError::DuplicateSynonym { .. })
        ));
    }

    #[test]
    fn merges_hadronic_and_lepton_rows() {
        let dict = Dictionary::parse("e- E-\ngamma GAMMA\np P\n").unwrap();
        let table = PropertyTable::parse(
            "e- -3 0 0 0 0 0\ngamma 0 0 0 0 0 0\nP 3 3 0 0 0 0\n",
            "E- 1 0 0\n",
            &dict,
        )
        .unwrap();
        assert_eq!(
            table.get("e-"),
            Some(&QuantumVector {
                q3: -3,
                le: 1,
                ..Default::default()
            })
        );
        assert!(table.get("gamma").unwrap().is_zero());
        let p = table.get("p").unwrap();
        assert_eq!((p.q3, p.b3), (3, 3));
        assert!(table.warnings().is_empty());
    }

    #[test]
    fn lepton_only_row_gets_zero_hadronic_numbers() {
        let dict = Dictionary::parse("nu(e) NUE\n").unwrap();
        let table = PropertyTable::parse("", "NUE 1 0 0\n", &dict).unwrap();
        assert_eq!(
            table.get("nu(e)"),
            Some(&QuantumVector {
                le: 1,
                ..Default::default()
            })
        );
    }

    #[test]
    fn malformed_rows() {
        let dict = Dictionary::parse("x\n").unwrap();
        assert!(matches!(
            PropertyTable::parse("x 1 2 3\n", "", &dict),
            Err(TableError::MalformedRow { line: 1, .. })
        ));
        assert!(matches!(
            PropertyTable::parse("\nx 1 2 3 4 5 six\n", "", &dict),
            Err(TableError::MalformedRow { line: 2, .. })
        ));
        assert!(matches!(
            PropertyTable::parse("", "x 1 0\n", &dict),
            Err(TableError::MalformedRow {
                file: "leptons",
                ..
            })
        ));
    }

    #[test]
    fn duplicate_rows_after_resolution() {
        let dict = Dictionary::parse("e- E-\n").unwrap();
        let err =
            PropertyTable::parse("e- -3 0 0 0 0 0\nE- -3 0 0 0 0 0\n", "", &dict).unwrap_err();
        assert!(
            matches!(err, TableError::DuplicateRow { line: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn non_key_rows_warn() {
        let dict = Dictionary::parse("e-\n").unwrap();
        let table = PropertyTable::parse("QUARK 0 0 0 0 0 0\n", "", &dict).unwrap();
        assert_eq!(table.warnings().len(), 1);
        assert!(table.get("QUARK").is_some());
    }

    #[test]
    fn component_names_round_trip() {
        for c in Component::ALL {
            assert_eq!(c.law_name().parse::<Component>(), Ok(c));
        }
        assert!("charm".parse::<Component>().is_err());
    }

    #[test]
    fn bundled_tables_load_cleanly() {
        let tables = Tables::bundled();
        assert!(
            tables.properties.warnings().is_empty(),
            "{:?}",
            tables.properties.warnings()
        );
        for name in tables.properties.names() {
            assert!(tables.dictionary.is_key(name), "{name}");
        }
    }
}
