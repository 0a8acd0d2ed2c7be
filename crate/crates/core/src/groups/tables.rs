//! Source of truth for the three classification tables: maximum-coclique
//! predictions (t, E, J \ E) per family row, the t-class listing for
//! 5 <= t <= 8, and the exponent-bound triples.
//!
//! Rows are declarative records, one per printed table row, so they can be
//! audited side by side with the originals. Band conditions on half-integer
//! boundaries are stored doubled (compare `2*map(i)` against `a*n + b`) to
//! stay in integer arithmetic.

use std::collections::BTreeSet;

use crate::arith::{eta, nu};
use crate::error::{Error, Result};

use super::{Family, GroupSpec};

/// Degree transform a band condition is phrased in.
#[derive(Clone, Copy)]
enum Map {
    Id,
    Nu,
    Eta,
}

impl Map {
    fn apply(self, i: u64) -> u64 {
        match self {
            Map::Id => i,
            Map::Nu => nu(i),
            Map::Eta => eta(i),
        }
    }
}

/// A degree entry that may depend on n. `NuHalfN`/`NuN` translate the
/// unitary rows' formal levels into literal `e(r, q)` degrees.
#[derive(Clone, Copy)]
enum D {
    Const(u64),
    N,
    HalfN,
    NMinus1,
    NMinus2,
    NPlus1,
    TwoN,
    HalfNMinus1,
    HalfNPlus1,
    NuHalfN,
    NuN,
}

impl D {
    fn eval(self, n: u64) -> u64 {
        match self {
            D::Const(c) => c,
            D::N => n,
            D::HalfN => n / 2,
            D::NMinus1 => n - 1,
            D::NMinus2 => n - 2,
            D::NPlus1 => n + 1,
            D::TwoN => 2 * n,
            D::HalfNMinus1 => (n - 1) / 2,
            D::HalfNPlus1 => (n + 1) / 2,
            D::NuHalfN => nu(n / 2),
            D::NuN => nu(n),
        }
    }
}

/// `{i : lo <= map(i) <= n}` with configurable strictness on both ends,
/// minus explicit exclusions; `lo` is `(a*n + b)/2`.
struct Band {
    map: Map,
    lo2: (i64, i64),
    lo_strict: bool,
    hi_strict: bool,
    minus: &'static [D],
}

enum ESpec {
    Explicit(&'static [u64]),
    Band(Band),
}

/// Condition on n: either an exact value or a residue class with a floor.
struct NCond {
    exact: Option<u64>,
    modulus: u64,
    residue: u64,
    min: u64,
}

impl NCond {
    const fn exact(n: u64) -> NCond {
        NCond { exact: Some(n), modulus: 1, residue: 0, min: 0 }
    }

    const fn class(modulus: u64, residue: u64, min: u64) -> NCond {
        NCond { exact: None, modulus, residue, min }
    }

    fn matches(&self, n: u64) -> bool {
        match self.exact {
            Some(x) => n == x,
            None => n >= self.min && n % self.modulus == self.residue,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum QCond {
    Any,
    Eq2,
    Gt2,
    Ne2,
}

impl QCond {
    fn matches(self, q: u64) -> bool {
        match self {
            QCond::Any => true,
            QCond::Eq2 => q == 2,
            QCond::Gt2 => q > 2,
            QCond::Ne2 => q != 2,
        }
    }
}

struct Row {
    families: &'static [Family],
    n: NCond,
    q: QCond,
    except: &'static [(u64, u64)],
    /// t = (a*n + b)/c.
    t: (i64, i64, i64),
    e: ESpec,
    j: &'static [D],
}

use Family::{
    Linear as L, OrthogonalEvenMinus as Om, OrthogonalEvenPlus as Op, OrthogonalOdd as Oo,
    Symplectic as S, Unitary as U,
};

/// One record per printed row; exact small rows precede their generic class
/// so that first-match lookup resolves them.
static ROWS: &[Row] = &[
    // Linear.
    Row {
        families: &[L],
        n: NCond::exact(11),
        q: QCond::Eq2,
        except: &[],
        t: (0, 5, 1),
        e: ESpec::Explicit(&[7, 8, 9, 11]),
        j: &[D::Const(5), D::Const(10)],
    },
    Row {
        families: &[L],
        n: NCond::exact(12),
        q: QCond::Eq2,
        except: &[],
        t: (0, 6, 1),
        e: ESpec::Explicit(&[7, 8, 9, 10, 11, 12]),
        j: &[],
    },
    Row {
        families: &[L],
        n: NCond::class(2, 1, 9),
        q: QCond::Any,
        except: &[(9, 2), (11, 2)],
        t: (1, 1, 2),
        e: ESpec::Band(Band { map: Map::Id, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[] }),
        j: &[],
    },
    Row {
        families: &[L],
        n: NCond::class(2, 0, 10),
        q: QCond::Any,
        except: &[(10, 2), (12, 2)],
        t: (1, 0, 2),
        e: ESpec::Band(Band { map: Map::Id, lo2: (1, 0), lo_strict: true, hi_strict: true, minus: &[] }),
        j: &[D::HalfN, D::N],
    },
    // Unitary.
    Row {
        families: &[U],
        n: NCond::class(2, 1, 9),
        q: QCond::Any,
        except: &[],
        t: (1, 1, 2),
        e: ESpec::Band(Band { map: Map::Nu, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[] }),
        j: &[],
    },
    Row {
        families: &[U],
        n: NCond::class(2, 0, 10),
        q: QCond::Any,
        except: &[],
        t: (1, 0, 2),
        e: ESpec::Band(Band { map: Map::Nu, lo2: (1, 0), lo_strict: true, hi_strict: true, minus: &[] }),
        j: &[D::NuHalfN, D::NuN],
    },
    // Symplectic and odd-dimensional orthogonal share all rows.
    Row {
        families: &[S, Oo],
        n: NCond::exact(6),
        q: QCond::Eq2,
        except: &[],
        t: (0, 5, 1),
        e: ESpec::Explicit(&[3, 5, 8, 10, 12]),
        j: &[],
    },
    Row {
        families: &[S, Oo],
        n: NCond::exact(7),
        q: QCond::Eq2,
        except: &[],
        t: (0, 6, 1),
        e: ESpec::Explicit(&[5, 7, 10, 12, 14]),
        j: &[D::Const(3), D::Const(8)],
    },
    Row {
        families: &[S, Oo],
        n: NCond::class(4, 0, 8),
        q: QCond::Any,
        except: &[],
        t: (3, 4, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: false, hi_strict: false, minus: &[] }),
        j: &[],
    },
    Row {
        families: &[S, Oo],
        n: NCond::class(4, 1, 5),
        q: QCond::Any,
        except: &[(5, 2)],
        t: (3, 5, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[] }),
        j: &[],
    },
    Row {
        families: &[S, Oo],
        n: NCond::class(4, 2, 6),
        q: QCond::Any,
        except: &[(6, 2)],
        t: (3, 2, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[] }),
        j: &[D::HalfN, D::N],
    },
    Row {
        families: &[S, Oo],
        n: NCond::class(4, 3, 7),
        q: QCond::Any,
        except: &[(7, 2)],
        t: (3, 3, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 1), lo_strict: true, hi_strict: false, minus: &[] }),
        j: &[D::HalfNMinus1, D::NMinus1, D::NPlus1],
    },
    // Plus-type even orthogonal.
    Row {
        families: &[Op],
        n: NCond::class(4, 0, 8),
        q: QCond::Any,
        except: &[],
        t: (3, 0, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: false, hi_strict: false, minus: &[D::TwoN] }),
        j: &[],
    },
    Row {
        families: &[Op],
        n: NCond::class(4, 1, 9),
        q: QCond::Any,
        except: &[],
        t: (3, 1, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[D::TwoN, D::NPlus1] }),
        j: &[D::NMinus1, D::NPlus1],
    },
    Row {
        families: &[Op],
        n: NCond::class(4, 2, 10),
        q: QCond::Any,
        except: &[],
        t: (3, -2, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[D::TwoN] }),
        j: &[D::HalfN, D::N],
    },
    Row {
        families: &[Op],
        n: NCond::class(4, 3, 7),
        q: QCond::Any,
        except: &[],
        t: (3, 3, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, -1), lo_strict: false, hi_strict: false, minus: &[D::TwoN, D::NMinus1] }),
        j: &[],
    },
    // Minus-type even orthogonal.
    Row {
        families: &[Om],
        n: NCond::exact(6),
        q: QCond::Eq2,
        except: &[],
        t: (0, 5, 1),
        e: ESpec::Explicit(&[3, 5, 8, 10, 12]),
        j: &[],
    },
    Row {
        families: &[Om],
        n: NCond::exact(6),
        q: QCond::Gt2,
        except: &[],
        t: (0, 5, 1),
        e: ESpec::Explicit(&[5, 8, 10, 12]),
        j: &[D::Const(3), D::Const(6)],
    },
    Row {
        families: &[Om],
        n: NCond::exact(7),
        q: QCond::Eq2,
        except: &[],
        t: (0, 5, 1),
        e: ESpec::Explicit(&[5, 10, 12, 14]),
        j: &[D::Const(3), D::Const(8)],
    },
    Row {
        families: &[Om],
        n: NCond::class(4, 0, 8),
        q: QCond::Any,
        except: &[],
        t: (3, 4, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: false, hi_strict: false, minus: &[] }),
        j: &[],
    },
    Row {
        families: &[Om],
        n: NCond::class(4, 1, 9),
        q: QCond::Any,
        except: &[],
        t: (3, 1, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[D::N, D::HalfNPlus1] }),
        j: &[D::HalfNPlus1, D::NMinus1],
    },
    Row {
        families: &[Om],
        n: NCond::class(4, 2, 10),
        q: QCond::Any,
        except: &[],
        t: (3, 2, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, 0), lo_strict: true, hi_strict: false, minus: &[] }),
        j: &[D::HalfN, D::NMinus2, D::N],
    },
    Row {
        families: &[Om],
        n: NCond::class(4, 3, 7),
        q: QCond::Ne2,
        except: &[],
        t: (3, 3, 4),
        e: ESpec::Band(Band { map: Map::Eta, lo2: (1, -1), lo_strict: false, hi_strict: false, minus: &[D::N, D::HalfNMinus1] }),
        j: &[],
    },
];

/// Predicted coclique data for a covered group: the maximum size, the degree
/// set common to every maximum coclique, and the degrees realized by only
/// some of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Prediction {
    pub t: u64,
    pub e: BTreeSet<u64>,
    pub j_minus_e: BTreeSet<u64>,
}

/// The (t, E, J \ E) prediction for `L`, or `None` when no row covers it.
pub fn table1_prediction(group: &GroupSpec) -> Option<Table1Prediction> {
    let n = group.prk();
    let q = group.q();
    let row = ROWS.iter().find(|row| {
        row.families.contains(&group.family())
            && row.n.matches(n)
            && row.q.matches(q)
            && !row.except.contains(&(n, q))
    })?;

    let (a, b, c) = row.t;
    let t_num = a * n as i64 + b;
    debug_assert!(t_num > 0 && t_num % c == 0);
    let t = (t_num / c) as u64;

    let e: BTreeSet<u64> = match &row.e {
        ESpec::Explicit(list) => list.iter().copied().collect(),
        ESpec::Band(band) => (1..=2 * n)
            .filter(|&i| {
                let m = band.map.apply(i) as i64;
                let lo = band.lo2.0 * n as i64 + band.lo2.1;
                let lo_ok = if band.lo_strict { 2 * m > lo } else { 2 * m >= lo };
                let hi_ok = if band.hi_strict { m < n as i64 } else { m <= n as i64 };
                lo_ok && hi_ok && !band.minus.iter().any(|d| d.eval(n) == i)
            })
            .collect(),
    };
    let j_minus_e: BTreeSet<u64> = row.j.iter().map(|d| d.eval(n)).collect();
    debug_assert!(e.is_disjoint(&j_minus_e));
    debug_assert!(e.len() as u64 <= t && t <= e.len() as u64 + 1);

    Some(Table1Prediction { t, e, j_minus_e })
}

#[derive(Clone, Copy, PartialEq)]
enum QSel {
    Any,
    Ne2,
    Only2,
}

/// The 5 <= t <= 8 class listing: (family, prk, q-selector, t).
static CLASSES: &[(Family, u64, QSel, u8)] = &[
    (L, 9, QSel::Ne2, 5),
    (U, 9, QSel::Any, 5),
    (L, 10, QSel::Ne2, 5),
    (U, 10, QSel::Any, 5),
    (L, 11, QSel::Only2, 5),
    (S, 5, QSel::Ne2, 5),
    (Oo, 5, QSel::Ne2, 5),
    (S, 6, QSel::Any, 5),
    (Oo, 6, QSel::Any, 5),
    (Om, 6, QSel::Any, 5),
    (Om, 7, QSel::Only2, 5),
    (L, 11, QSel::Ne2, 6),
    (U, 11, QSel::Any, 6),
    (L, 12, QSel::Any, 6),
    (U, 12, QSel::Any, 6),
    (S, 7, QSel::Any, 6),
    (Oo, 7, QSel::Any, 6),
    (Op, 7, QSel::Any, 6),
    (Om, 7, QSel::Ne2, 6),
    (Op, 8, QSel::Any, 6),
    (L, 13, QSel::Any, 7),
    (U, 13, QSel::Any, 7),
    (L, 14, QSel::Any, 7),
    (U, 14, QSel::Any, 7),
    (S, 8, QSel::Any, 7),
    (Oo, 8, QSel::Any, 7),
    (Om, 8, QSel::Any, 7),
    (Op, 9, QSel::Any, 7),
    (Om, 9, QSel::Any, 7),
    (Op, 10, QSel::Any, 7),
    (L, 15, QSel::Any, 8),
    (U, 15, QSel::Any, 8),
    (L, 16, QSel::Any, 8),
    (U, 16, QSel::Any, 8),
    (S, 9, QSel::Any, 8),
    (Oo, 9, QSel::Any, 8),
    (S, 10, QSel::Any, 8),
    (Oo, 10, QSel::Any, 8),
    (Om, 10, QSel::Any, 8),
];

/// The t-class of `L` from the 5..8 listing, or `None` if not listed.
pub fn table2_class(group: &GroupSpec) -> Option<u8> {
    CLASSES
        .iter()
        .find(|&&(family, prk, sel, _)| {
            family == group.family()
                && prk == group.prk()
                && match sel {
                    QSel::Any => true,
                    QSel::Ne2 => group.q() != 2,
                    QSel::Only2 => group.q() == 2,
                }
        })
        .map(|&(_, _, _, t)| t)
}

/// Exponent-bound triples (alpha, beta, gamma), keyed by type.
static EXPONENT_BOUNDS: &[(Family, u64, (u64, u64, u64))] = &[
    (L, 9, (32, 86, 28)),
    (U, 9, (32, 86, 28)),
    (L, 10, (6, 64, 32)),
    (U, 10, (6, 64, 32)),
    (L, 11, (118, 143, 42)),
    (U, 11, (118, 143, 42)),
    (L, 12, (15, 157, 46)),
    (U, 12, (15, 157, 46)),
    (L, 13, (370, 342, 58)),
    (U, 13, (370, 342, 58)),
    (L, 14, (15, 247, 64)),
    (U, 14, (15, 247, 64)),
    (S, 5, (5, 20, 20)),
    (Oo, 5, (5, 20, 20)),
    (S, 6, (4, 16, 24)),
    (Oo, 6, (4, 16, 24)),
    (Om, 6, (4, 16, 24)),
    (S, 7, (5, 29, 36)),
    (Oo, 7, (5, 29, 36)),
    (Op, 8, (5, 29, 36)),
    (S, 8, (10, 29, 44)),
    (Oo, 8, (10, 29, 44)),
    (Om, 8, (10, 29, 44)),
    (Op, 7, (7, 37, 30)),
    (Om, 7, (7, 37, 30)),
    (Op, 9, (10, 65, 50)),
    (Om, 9, (10, 65, 50)),
    (Op, 10, (8, 49, 56)),
];

/// The (alpha, beta, gamma) triple bounding exp(L) between
/// `p q^gamma / alpha` and `beta p q^gamma`.
pub fn exponent_bounds(group: &GroupSpec) -> Result<(u64, u64, u64)> {
    EXPONENT_BOUNDS
        .iter()
        .find(|&&(family, prk, _)| family == group.family() && prk == group.prk())
        .map(|&(_, _, triple)| triple)
        .ok_or_else(|| {
            Error::unsupported(format!(
                "no exponent-bound row for type {}:{}",
                group.family().code(),
                group.prk()
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::super::test_support::g;
    use super::*;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn pinned_rows() {
        let p = table1_prediction(&g("L:11:2")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[7, 8, 9, 11]), set(&[5, 10])));

        let p = table1_prediction(&g("S:5:5")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[3, 5, 6, 8, 10]), set(&[])));

        let p = table1_prediction(&g("O-:6:5")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[5, 8, 10, 12]), set(&[3, 6])));

        let p = table1_prediction(&g("O-:6:2")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[3, 5, 8, 10, 12]), set(&[])));

        let p = table1_prediction(&g("L:9:5")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[5, 6, 7, 8, 9]), set(&[])));

        let p = table1_prediction(&g("U:9:5")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[3, 8, 10, 14, 18]), set(&[])));

        let p = table1_prediction(&g("O+:7:3")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (6, set(&[3, 5, 7, 8, 10, 12]), set(&[])));

        let p = table1_prediction(&g("O-:7:2")).unwrap();
        assert_eq!((p.t, p.e, p.j_minus_e), (5, set(&[5, 10, 12, 14]), set(&[3, 8])));
    }

    #[test]
    fn unitary_even_levels_are_translated() {
        // The printed {n/2, n} are formal levels; literal degrees go through
        // nu. For prk 12 that yields {3, 12}, not {6, 12}.
        let p = table1_prediction(&g("U:12:5")).unwrap();
        assert_eq!(p.e, set(&[5, 8, 14, 18, 22]));
        assert_eq!(p.j_minus_e, set(&[3, 12]));

        let p = table1_prediction(&g("U:10:5")).unwrap();
        assert_eq!(p.e, set(&[3, 8, 14, 18]));
        assert_eq!(p.j_minus_e, set(&[5, 10]));
    }

    #[test]
    fn uncovered_specs() {
        for s in ["L:9:2", "L:10:2", "S:5:2", "Oodd:5:2", "L:8:5", "U:8:5", "O+:6:5", "S:4:3", "O-:11:2"] {
            assert_eq!(table1_prediction(&g(s)), None, "{s} should be uncovered");
        }
    }

    #[test]
    fn class_listing_pins() {
        assert_eq!(table2_class(&g("L:9:5")), Some(5));
        assert_eq!(table2_class(&g("L:9:2")), None);
        assert_eq!(table2_class(&g("U:9:2")), Some(5));
        assert_eq!(table2_class(&g("L:11:2")), Some(5));
        assert_eq!(table2_class(&g("L:11:3")), Some(6));
        assert_eq!(table2_class(&g("L:13:3")), Some(7));
        assert_eq!(table2_class(&g("O-:7:2")), Some(5));
        assert_eq!(table2_class(&g("O-:7:3")), Some(6));
        assert_eq!(table2_class(&g("S:10:3")), Some(8));
        assert_eq!(table2_class(&g("O+:6:5")), None);
        assert_eq!(table2_class(&g("S:5:2")), None);
    }

    #[test]
    fn class_listing_agrees_with_row_predictions() {
        // Where both tables cover a spec, the t values must coincide.
        let bases = ["2", "3", "5", "7", "11", "13", "2:2", "2:3", "3:2"];
        for family in ["L", "U", "S", "Oodd", "O+", "O-"] {
            for prk in 2..=16 {
                for base in bases {
                    let Ok(spec) = format!("{family}:{prk}:{base}").parse::<GroupSpec>() else {
                        continue;
                    };
                    if let (Some(row), Some(t2)) = (table1_prediction(&spec), table2_class(&spec)) {
                        assert_eq!(row.t, t2 as u64, "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn exponent_bound_pins() {
        assert_eq!(exponent_bounds(&g("L:9:5")).unwrap(), (32, 86, 28));
        assert_eq!(exponent_bounds(&g("U:9:5")).unwrap(), (32, 86, 28));
        assert_eq!(exponent_bounds(&g("S:5:5")).unwrap(), (5, 20, 20));
        assert_eq!(exponent_bounds(&g("Oodd:5:5")).unwrap(), (5, 20, 20));
        assert_eq!(exponent_bounds(&g("O+:7:3")).unwrap(), (7, 37, 30));
        assert_eq!(exponent_bounds(&g("O-:7:3")).unwrap(), (7, 37, 30));
        assert!(exponent_bounds(&g("S:10:3")).is_err());
        assert!(exponent_bounds(&g("L:15:3")).is_err());
        assert!(exponent_bounds(&g("O+:6:5")).is_err());
    }
}
