//! Fiber configurations allowed by `Σχ = 12`, the witness catalog of
//! explicit equations, and the regenerated isotrivial tables.

mod catalog;
mod tables;

use std::cmp::Reverse;

use crate::kodaira::{Configuration, KodairaType};

pub use catalog::{verify_witness, witness_catalog, Mismatch, Witness};
pub use tables::{emit_tables, render_factored, render_tables, Table, TableMismatch, TableRow};

/// Constant values of j an isotrivial fibration can have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotrivialClass {
    Zero,
    Value1728,
    Generic,
}

impl IsotrivialClass {
    /// Fiber types whose j-behaviour is compatible with the constant.
    pub fn allowed_types(self) -> &'static [KodairaType] {
        use KodairaType::*;
        match self {
            IsotrivialClass::Zero => &[IIStar, IVStar, IStar(0), IV, II],
            IsotrivialClass::Value1728 => &[IIIStar, IStar(0), III],
            IsotrivialClass::Generic => &[IStar(0)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryClass {
    Isotrivial(IsotrivialClass),
    /// Some `I_n*` with `n >= 1`, and no `I_n`.
    InstarWithoutIn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConfigurationQuery {
    pub class: QueryClass,
    /// Bound on the total du Val rank; 8 unless stated.
    pub rank_cap: Option<u32>,
}

impl ConfigurationQuery {
    pub fn run(&self) -> Vec<Configuration> {
        let cap = self.rank_cap.unwrap_or(8);
        match self.class {
            QueryClass::Isotrivial(c) => {
                enumerate_isotrivial(c).into_iter().filter(|fc| fc.rank_sum() <= cap).collect()
            }
            QueryClass::InstarWithoutIn => enumerate_instar_without_in(cap),
        }
    }
}

/// Every multiset over `types` with Euler numbers summing to `target`.
fn multisets(types: &[KodairaType], target: u32) -> Vec<Configuration> {
    fn go(types: &[KodairaType], left: u32, acc: &mut Configuration, out: &mut Vec<Configuration>) {
        let Some((&t, rest)) = types.split_first() else {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        };
        let chi = t.chi();
        for k in 0..=left / chi {
            let mut next = acc.clone();
            next.insert(t, k);
            go(rest, left - k * chi, &mut next, out);
        }
    }
    let mut out = Vec::new();
    go(types, target, &mut Configuration::new(), &mut out);
    sort_canonically(&mut out);
    out
}

/// Big fibers first, in the order the entries are displayed.
pub fn sort_canonically(configs: &mut [Configuration]) {
    configs.sort_by_cached_key(|fc| {
        fc.display_entries()
            .into_iter()
            .map(|(t, c)| (Reverse(t.chi()), t.is_multiplicative(), Reverse(t), Reverse(c)))
            .collect::<Vec<_>>()
    });
}

pub fn enumerate_isotrivial(class: IsotrivialClass) -> Vec<Configuration> {
    multisets(class.allowed_types(), 12)
}

pub fn enumerate_instar_without_in(rank_cap: u32) -> Vec<Configuration> {
    use KodairaType::*;
    let mut types = vec![IIStar, IIIStar, IVStar, IStar(0), IV, III, II];
    // I_n* has Euler number 6 + n, so n <= 6.
    types.extend((1..=6).map(IStar));
    multisets(&types, 12)
        .into_iter()
        .filter(|fc| fc.iter().any(|(t, _)| matches!(t, IStar(n) if n >= 1)))
        .filter(|fc| fc.rank_sum() <= rank_cap)
        .collect()
}

/// Combinatorially possible configurations that do not occur on rational
/// elliptic surfaces.
pub fn miranda_exclusions() -> Vec<Configuration> {
    ["I2* + IV", "I3* + III", "I4* + II"]
        .iter()
        .map(|s| s.parse().expect("valid notation"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub excluded: bool,
    /// Catalog witnesses realizing the configuration.
    pub witnesses: Vec<&'static str>,
}

impl Annotation {
    pub fn note(&self) -> &'static str {
        if self.excluded {
            "does not occur (excluded list)"
        } else if self.witnesses.is_empty() {
            "no catalog witness; combinatorially feasible, realizability per citation only"
        } else {
            "realized by catalog witness"
        }
    }
}

/// Marks each configuration without filtering anything out.
pub fn annotate(configs: &[Configuration]) -> Vec<(Configuration, Annotation)> {
    let excluded = miranda_exclusions();
    let catalog = witness_catalog();
    configs
        .iter()
        .map(|fc| {
            let witnesses = catalog.iter().filter(|w| &w.fibers == fc).map(|w| w.name).collect();
            (fc.clone(), Annotation { excluded: excluded.contains(fc), witnesses })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn configs(list: &[&str]) -> Vec<Configuration> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn generic_j() {
        assert_eq!(enumerate_isotrivial(IsotrivialClass::Generic), configs(&["2I0*"]));
    }

    #[test]
    fn j_zero_in_table_order() {
        let got: Vec<String> =
            enumerate_isotrivial(IsotrivialClass::Zero).iter().map(|c| c.to_string()).collect();
        assert_eq!(
            got,
            [
                "II* + II", "IV* + IV", "IV* + 2II", "2I0*", "I0* + IV + II", "I0* + 3II", "3IV",
                "2IV + 2II", "IV + 4II", "6II"
            ]
        );
    }

    #[test]
    fn j_1728() {
        assert_eq!(
            enumerate_isotrivial(IsotrivialClass::Value1728),
            configs(&["III* + III", "2I0*", "I0* + 2III", "4III"])
        );
    }

    #[test]
    fn instar_lists() {
        let five = configs(&["I1* + III + II", "I2* + IV", "I2* + 2II", "I3* + III", "I4* + II"]);
        let mut got = enumerate_instar_without_in(8);
        got.sort();
        let mut want = five.clone();
        want.sort();
        assert_eq!(got, want);

        let mut ten = enumerate_instar_without_in(10);
        ten.sort();
        let mut want = five;
        want.push("I6*".parse().unwrap());
        want.sort();
        assert_eq!(ten, want);

        assert!(enumerate_instar_without_in(4).is_empty());
    }

    #[test]
    fn exclusions() {
        let ex = miranda_exclusions();
        assert!(ex.contains(&"I2* + IV".parse().unwrap()));
        assert!(!ex.contains(&"I1* + III + II".parse().unwrap()));
        assert!(!ex.contains(&"2I0*".parse().unwrap()));
    }

    #[test]
    fn annotations_do_not_filter() {
        let list = enumerate_instar_without_in(8);
        let notes = annotate(&list);
        assert_eq!(notes.len(), 5);
        for (fc, a) in &notes {
            assert_eq!(a.excluded, miranda_exclusions().contains(fc));
            if fc.to_string() == "I1* + III + II" {
                assert_eq!(a.witnesses, ["instar/D5+A1"]);
            }
        }
    }

    #[test]
    fn query_dispatch() {
        let q = ConfigurationQuery { class: QueryClass::InstarWithoutIn, rank_cap: None };
        assert_eq!(q.run().len(), 5);
        let q = ConfigurationQuery { class: QueryClass::Isotrivial(IsotrivialClass::Zero), rank_cap: None };
        assert_eq!(q.run().len(), 10);
    }
}
