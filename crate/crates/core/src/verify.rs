//! Cross-checks between independent computation routes, runnable outside
//! the test harness (the CLI `verify` command drives these).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::admissible::{self, Partition};
use crate::bounds;
use crate::chow::{self, BundleData, GradedClass};
use crate::qseries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Qseries,
    Admissible,
    Chow,
    Bounds,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["qseries", "admissible", "chow", "bounds", "all"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qseries" => Ok(Suite::Qseries),
            "admissible" => Ok(Suite::Admissible),
            "chow" => Ok(Suite::Chow),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?}; expected one of {}",
                Suite::NAMES.join(", ")
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Qseries => "qseries",
            Suite::Admissible => "admissible",
            Suite::Chow => "chow",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

struct Checks {
    suite: &'static str,
    out: Vec<CheckResult>,
}

impl Checks {
    fn new(suite: &'static str) -> Self {
        Checks {
            suite,
            out: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckResult {
            suite: self.suite.to_string(),
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Run a suite. `max_n` bounds the enumeration-heavy checks.
pub fn run(suite: Suite, max_n: usize) -> Vec<CheckResult> {
    match suite {
        Suite::Qseries => qseries_checks(max_n),
        Suite::Admissible => admissible_checks(max_n),
        Suite::Chow => chow_checks(),
        Suite::Bounds => bounds_checks(max_n),
        Suite::All => {
            let mut all = qseries_checks(max_n);
            all.extend(admissible_checks(max_n));
            all.extend(chow_checks());
            all.extend(bounds_checks(max_n));
            all
        }
    }
}

fn qseries_checks(max_n: usize) -> Vec<CheckResult> {
    let mut c = Checks::new("qseries");

    let yz = qseries::yau_zaslow(2);
    c.push(
        "yau-zaslow-leading",
        yz == [1, 24, 324].map(BigInt::from),
        format!("N_0..N_2 = {yz:?}"),
    );

    let p = qseries::partition_numbers(max_n);
    let mismatch = (0..=max_n).find(|&n| p[n] != BigInt::from(Partition::enumerate(n as u64).len()));
    c.push(
        "partitions-vs-enumeration",
        mismatch.is_none(),
        match mismatch {
            None => format!("p(n) equals enumerated count for n <= {max_n}"),
            Some(n) => format!("first mismatch at n = {n}"),
        },
    );

    let order = 101;
    let mut ok = true;
    for (k1, k2) in [(-24, -24), (-48, 48), (-1, 25), (7, -31), (3, 3)] {
        let lhs = &qseries::eta_product(k1, order) * &qseries::eta_product(k2, order);
        ok &= lhs == qseries::eta_product(k1 + k2, order);
    }
    c.push("eta-additivity", ok, format!("sampled exponent pairs, order {order}"));

    let yz = qseries::eta_product(-24, 201);
    c.push(
        "bl48-is-square",
        &yz * &yz == qseries::bl48_series(201),
        "(-48 series) = (-24 series)^2 through q^200",
    );
    c.out
}

fn admissible_checks(max_n: usize) -> Vec<CheckResult> {
    let mut c = Checks::new("admissible");
    let p = admissible::partition_counts(max_n);

    let bad = (1..=max_n as u64)
        .find(|&a| BigInt::from(admissible::enumerate_one_admissible(a).len()) != p[a as usize]);
    c.push(
        "count-equals-p",
        bad.is_none(),
        match bad {
            None => format!("#1-admissible(a) = p(a) for a <= {max_n}"),
            Some(a) => format!("count differs from p({a})"),
        },
    );

    let mut bij_ok = true;
    for a in 1..=max_n as u64 {
        let listed = admissible::enumerate_one_admissible(a);
        let mut image: Vec<_> = Partition::enumerate(a)
            .iter()
            .map(|lam| lam.to_sequence())
            .collect::<Result<_, _>>()
            .unwrap_or_default();
        bij_ok &= image.iter().all(|s| {
            s.is_one_admissible()
                && s.weight() == a
                && s.to_partition().and_then(|l| l.to_sequence()).as_ref() == Ok(s)
        });
        image.sort_by(|x, y| (x.left(), x.values()).cmp(&(y.left(), y.values())));
        image.dedup();
        bij_ok &= image == listed;
    }
    c.push(
        "diagonal-bijection",
        bij_ok,
        format!("partition -> diagonal sequence is a bijection for a <= {max_n}"),
    );

    let r_max = 60;
    let series = qseries::bl48_series(r_max);
    let bad = (1..=r_max).find(|&r| {
        admissible::fixed_fiber_count(r).ok().as_ref() != series.coeff(r - 1)
    });
    c.push(
        "fixed-fiber-two-path",
        bad.is_none(),
        match bad {
            None => format!("48-fold convolution equals eta coefficient for r <= {r_max}"),
            Some(r) => format!("mismatch at r = {r}"),
        },
    );
    c.out
}

/// Bracket coefficient printed in the proposition, kept for comparison only.
fn printed_bracket(b: &BundleData) -> GradedClass {
    let (g, n) = (i64::from(b.g), i64::from(b.n));
    GradedClass::linear(3 * g + 3 * n - 2 * b.d - 3, -3, b.n)
}

fn chow_checks() -> Vec<CheckResult> {
    let mut c = Checks::new("chow");

    let mut newton_ok = true;
    let mut c1_ok = true;
    let mut bracket_ok = true;
    let mut printed_differs = true;
    for g in 0..=10u32 {
        for n in 2..=12u32 {
            for d in 0..=30i64 {
                let b = BundleData { g, n, d };
                let ch = chow::chern_character_fn(&b);
                let classes = chow::chern_classes_from_character(&ch);
                newton_ok &= chow::chern_fn_closed_form(&b, n).ok().as_ref()
                    == Some(&classes[n as usize])
                    && chow::chern_fn_closed_form(&b, n - 1).ok().as_ref()
                        == Some(&classes[n as usize - 1]);
                let printed_c1 = GradedClass::linear(
                    -4 * i64::from(n) - 2 * i64::from(g) + 2 * d + 2,
                    4,
                    n,
                );
                c1_ok &= ch.degree_part(1) == printed_c1 && classes[1] == printed_c1;
                let bracket = chow::degeneracy_bracket(&b);
                bracket_ok &= bracket
                    == GradedClass::linear(i64::from(g) + 5 * i64::from(n) - 2 * d - 1, -5, n);
                printed_differs &= bracket != printed_bracket(&b);
            }
        }
    }
    c.push(
        "newton-vs-closed-form",
        newton_ok,
        "c_{n-1}, c_n of F_N agree on (g,n,d) in [0,10]x[2,12]x[0,30]",
    );
    c.push("c1-display", c1_ok, "c_1(F_N) = (-4n-2g+2d+2)x + 4 theta on the grid");
    c.push(
        "bracket-forced-form",
        bracket_ok && printed_differs,
        "c_1(C_n) - c_1(F_N) = (g+5n-2d-1)x - 5 theta; note: the proposition's printed \
         (3g+3n-2d-3)x - 3 theta differs at every grid point and is not used",
    );

    let spec_ok = (1..=40).all(|r| {
        chow::degeneracy_bracket(&chow::bundle_44(r))
            == GradedClass::linear(2 * i64::from(r), -5, 2 * r)
    });
    c.push("bracket-specialization", spec_ok, "(9, 2r, 4r+4) gives (2r)x - 5 theta");

    let bad = (5..=40u32).find(|&r| {
        let closed = chow::closed_form_genus_44(r).map(num_rational::BigRational::from_integer);
        closed.ok() != Some(chow::degeneracy_genus(&chow::bundle_44(r)))
    });
    c.push(
        "genus-sum-vs-polynomial",
        bad.is_none(),
        match bad {
            None => "summation equals 1 + 4^(r+3) P(r)/6 for 5 <= r <= 40".to_string(),
            Some(r) => format!("mismatch at r = {r}"),
        },
    );
    c.out
}

fn bounds_checks(max_n: usize) -> Vec<CheckResult> {
    let mut c = Checks::new("bounds");
    let r_max = max_n.max(3);
    let series = qseries::bl48_series(r_max);

    let known = [(3u64, 8u64), (5, 384), (7, 9792)];
    let ok = known.iter().all(|&(g, lb)| {
        bounds::severi_lower_bound_from(g, &series)
            .map(|rep| rep.severi_genus_lb == BigInt::from(lb))
            .unwrap_or(false)
    });
    c.push("severi-small-g", ok, "g = 3, 5, 7 give 8, 384, 9792");

    let reports: Vec<_> = (1..=r_max as u64)
        .filter_map(|r| bounds::severi_lower_bound_from(2 * r + 1, &series).ok())
        .collect();
    let increasing = reports
        .windows(2)
        .all(|w| w[1].severi_genus_lb > w[0].severi_genus_lb);
    c.push("severi-increasing", increasing, format!("strictly increasing for odd g <= {}", 2 * r_max + 1));

    let two_path = reports.iter().all(|rep| {
        admissible::fixed_fiber_count(rep.r as usize).ok().as_ref() == Some(&rep.bl_count)
    });
    c.push("severi-two-path", two_path, "bl_count equals the 48-fold partition convolution");

    let ratio_ok = (5..60u64).all(|r| {
        let a = bounds::appendix_conjectural_bound(2 * r + 1);
        let b = bounds::appendix_conjectural_bound(2 * r + 3);
        match (a, b) {
            (Ok(a), Ok(b)) => b > &a * 4u32,
            _ => false,
        }
    });
    c.push("conjectural-ratio", ratio_ok, "closed-form genus grows by more than 4x per step in r");
    c.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            let s: Suite = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Qseries, Suite::Admissible, Suite::Bounds] {
            let results = run(suite, 10);
            assert!(!results.is_empty());
            for r in &results {
                assert!(r.passed, "{r}");
            }
        }
    }
}
