//! Closed-form analysis of the average independent-set size of paths,
//! and the finite case analysis behind the lower bound `a*n + b` for
//! trees that are not paths.
//!
//! Everything here lives in the quadratic field with sqrt5: the slope
//! `a = (5 - sqrt5)/10`, the non-path intercept `b = (79*sqrt5 - 165)/70`,
//! the per-`n` offsets `c_n = avi(P_n) - a*n`, and the golden-ratio
//! powers in the closed form. Each closed-form evaluation is cross-checked
//! against an independent big-integer recurrence (and against the graph
//! engine while the path fits in 64 vertices), so a transcription error
//! cannot slip through silently.

use num_bigint::BigInt;

use crate::engine;
use crate::error::{Error, Result};
use crate::exact::{frac, QuadNumber, Rational};
use crate::graph::Graph;
use crate::report::{VerificationReport, Witness};

/// Largest `n` for which the closed form is evaluated.
pub const MAX_CLOSED_FORM_N: usize = 500;

/// `a = (5 - sqrt5)/10`: the linear growth rate of `avi(P_n)`.
pub fn path_slope() -> QuadNumber {
    QuadNumber::new(frac(1, 2), frac(-1, 10))
}

/// `b = (79*sqrt5 - 165)/70`: every `n`-vertex tree that is not a path
/// has average independent-set size at least `a*n + b`.
pub fn nonpath_intercept() -> QuadNumber {
    QuadNumber::new(frac(-33, 14), frac(79, 70))
}

/// `(3 - sqrt5)/5`: the limit of `avi(P_n) - a*n`.
pub fn limit_offset() -> QuadNumber {
    QuadNumber::new(frac(3, 5), frac(-1, 5))
}

/// `1/sqrt5 - 1/3`: the global minimum of the offsets, attained at n=2.
pub fn offset_min() -> QuadNumber {
    QuadNumber::new(frac(-1, 3), frac(1, 5))
}

/// `2/sqrt5 - 3/4`: the minimum of the offsets over n != 2, attained at
/// n=4. Also the constant used for branches with four or more vertices
/// in the case analysis.
pub fn offset_second_min() -> QuadNumber {
    QuadNumber::new(frac(-3, 4), frac(2, 5))
}

/// `sqrt5/2 - 25/26`: the offset at n=5, an upper bound on the offsets
/// for all n >= 4.
pub fn offset_upper() -> QuadNumber {
    QuadNumber::new(frac(-25, 26), frac(1, 2))
}

/// The exact closed form of `avi(P_n)` together with its rational
/// collapse and the offset `c_n = avi(P_n) - a*n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFormulaValue {
    pub n: usize,
    /// `a*n + (3-sqrt5)/5 - (n+2)/(sqrt5*((-phi^2)^(n+2) - 1))`.
    pub closed_form: QuadNumber,
    /// The same value, which must be rational.
    pub rational_value: Rational,
    /// `closed_form - a*n`.
    pub offset: QuadNumber,
}

/// `avi(P_n)` from the big-integer recurrences
/// `I(P_n) = I(P_{n-1}) + I(P_{n-2})` and
/// `T(P_n) = T(P_{n-1}) + T(P_{n-2}) + I(P_{n-2})`,
/// independent of any sqrt5 arithmetic.
pub fn path_avi_recurrence(n: usize) -> Rational {
    assert!(n >= 1);
    let (mut i_prev, mut i_cur) = (BigInt::from(2), BigInt::from(3)); // I(P_1), I(P_2)
    let (mut t_prev, mut t_cur) = (BigInt::from(1), BigInt::from(2)); // T(P_1), T(P_2)
    if n == 1 {
        return frac(1, 2);
    }
    for _ in 3..=n {
        let i_next = &i_cur + &i_prev;
        let t_next = &t_cur + &t_prev + &i_prev;
        i_prev = std::mem::replace(&mut i_cur, i_next);
        t_prev = std::mem::replace(&mut t_cur, t_next);
    }
    Rational::new(t_cur, i_cur).expect("I(P_n) > 0")
}

/// Evaluates the closed form for `avi(P_n)` exactly and cross-checks it
/// against the recurrence (always) and the graph engine (for paths that
/// fit in the 64-vertex representation).
pub fn path_closed_form(n: usize) -> Result<PathFormulaValue> {
    if !(1..=MAX_CLOSED_FORM_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "path length",
            got: n,
            min: 1,
            max: MAX_CLOSED_FORM_N,
        });
    }
    // (-phi^2)^(n+2) = (-1)^n * phi^(2n+4)
    let mut power = QuadNumber::golden_power(2 * (n as i64) + 4);
    if n % 2 == 1 {
        power = -power;
    }
    let denom = QuadNumber::sqrt5() * (power - QuadNumber::one());
    let term = QuadNumber::from_integer(n as i64 + 2).checked_div(&denom)?;
    let offset = limit_offset() - term;
    let closed_form =
        &path_slope() * &Rational::from_integer(n as i64) + offset.clone();
    let rational_value = closed_form.as_rational()?;

    let by_recurrence = path_avi_recurrence(n);
    if rational_value != by_recurrence {
        return Err(Error::Internal(format!(
            "closed form {rational_value} != recurrence {by_recurrence} at n={n}"
        )));
    }
    if n <= crate::graph::MAX_VERTICES {
        let by_engine = engine::avi(&Graph::path(n)?);
        if rational_value != by_engine {
            return Err(Error::Internal(format!(
                "closed form {rational_value} != engine {by_engine} at n={n}"
            )));
        }
    }
    Ok(PathFormulaValue {
        n,
        closed_form,
        rational_value,
        offset,
    })
}

/// Checks the closed form against the recurrence for `1..=max_n`.
pub fn verify_path_formula(max_n: usize) -> Result<VerificationReport> {
    let claim = "path-closed-form";
    let range = format!("n = 1..={max_n}");
    for n in 1..=max_n {
        if let Err(e) = path_closed_form(n) {
            let witness = Witness::from_graph(&Graph::empty(0)?).with_value("error", e);
            return Ok(VerificationReport::counterexample(claim, range, witness)
                .with_note(format!("closed form failed at n={n}")));
        }
    }
    Ok(VerificationReport::verified(claim, range)
        .with_note("zero sqrt5 residue and recurrence agreement at every n".to_string()))
}

/// Behaviour of the offsets `c_n`: the distance to the limit shrinks
/// strictly (from n=2 on) and alternates in sign, the global minimum sits
/// at n=2, and the minimum over n != 2 sits at n=4.
pub fn verify_error_term(max_n: usize) -> Result<VerificationReport> {
    if max_n < 5 {
        return Err(Error::OutOfRange {
            what: "error-term range",
            got: max_n,
            min: 5,
            max: MAX_CLOSED_FORM_N,
        });
    }
    let claim = "path-offset-behaviour";
    let range = format!("n = 1..={max_n}");
    let limit = limit_offset();
    let offsets: Vec<QuadNumber> = (1..=max_n)
        .map(|n| Ok(path_closed_form(n)?.offset))
        .collect::<Result<_>>()?;
    let fail = |note: String| -> VerificationReport {
        let witness = Witness {
            vertex_count: 0,
            edges: Vec::new(),
            values: Default::default(),
        };
        VerificationReport::counterexample(claim, range.clone(), witness).with_note(note)
    };

    for n in 1..max_n {
        let cur = &offsets[n - 1] - &limit;
        let next = &offsets[n] - &limit;
        if cur.signum() == 0 || next.signum() == 0 || cur.signum() == next.signum() {
            return Ok(fail(format!("offset signs fail to alternate at n={n}")));
        }
        if n >= 2 && next.abs() >= cur.abs() {
            return Ok(fail(format!("|c_n - limit| fails to shrink at n={n}")));
        }
    }
    let min = offset_min();
    let second = offset_second_min();
    for (i, c) in offsets.iter().enumerate() {
        let n = i + 1;
        let against_min = (c - &min).signum();
        if against_min < 0 || (against_min == 0) != (n == 2) {
            return Ok(fail(format!("global offset minimum misplaced at n={n}")));
        }
        if n != 2 {
            let against_second = (c - &second).signum();
            if against_second < 0 || (against_second == 0) != (n == 4) {
                return Ok(fail(format!("secondary offset minimum misplaced at n={n}")));
            }
        }
    }
    Ok(VerificationReport::verified(claim, range)
        .with_note("alternation and strict shrinking verified")
        .with_note(format!("global minimum c_2 = {}", offsets[1]))
        .with_note(format!("minimum over n != 2: c_4 = {}", offsets[3])))
}

/// One case of the branch analysis at a vertex of degree `k`: how many
/// branches have one vertex, two vertices, three vertices with the
/// attachment at the centre, three vertices with the attachment at a
/// leaf, and four or more vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CaseSpec {
    pub branch_count: usize,
    pub size1: usize,
    pub size2: usize,
    pub size3_center: usize,
    pub size3_leaf: usize,
    pub size4_plus: usize,
}

impl std::fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "k={} x=({},{},{},{},{})",
            self.branch_count,
            self.size1,
            self.size2,
            self.size3_center,
            self.size3_leaf,
            self.size4_plus
        )
    }
}

/// All weak compositions of `k` into the five branch categories;
/// `k` must be 3 or 4.
pub fn enumerate_cases(k: usize) -> Result<Vec<CaseSpec>> {
    if k != 3 && k != 4 {
        return Err(Error::OutOfRange {
            what: "branch count",
            got: k,
            min: 3,
            max: 4,
        });
    }
    let mut out = Vec::new();
    for size1 in 0..=k {
        for size2 in 0..=(k - size1) {
            for size3_center in 0..=(k - size1 - size2) {
                for size3_leaf in 0..=(k - size1 - size2 - size3_center) {
                    let size4_plus = k - size1 - size2 - size3_center - size3_leaf;
                    out.push(CaseSpec {
                        branch_count: k,
                        size1,
                        size2,
                        size3_center,
                        size3_leaf,
                        size4_plus,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The exact lower bound produced by one case.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CaseBound {
    pub spec: CaseSpec,
    /// Feasible interval of `rho = I(T-v)/I(T)` for this case.
    pub rho_interval: (Rational, Rational),
    /// Bound evaluated at the two interval endpoints.
    pub bound_at_endpoints: (QuadNumber, QuadNumber),
    /// Minimum of the two endpoint values: the certified constant term.
    pub lower_bound: QuadNumber,
    /// `lower_bound - b`; the case analysis succeeds iff this is >= 0.
    pub margin: QuadNumber,
}

/// Computes the certified constant-term lower bound for one case.
///
/// Writing `avi(T) = rho * sum(avi(T_j)) + (1-rho)*(1 + sum(avi(T_j - v_j)))`
/// and inserting the per-branch values (exact for branches of up to three
/// vertices, the `a*|T_j| + 2/sqrt5 - 3/4` bound beyond), the `a`-linear
/// parts cancel against `a*|T|` and what remains is linear in `rho`, so
/// its minimum over the feasible `rho` interval sits at an endpoint.
pub fn case_lower_bound(spec: &CaseSpec) -> CaseBound {
    let a = path_slope();
    let big = offset_second_min(); // 2/sqrt5 - 3/4
    let scale = |q: QuadNumber, m: usize| -> QuadNumber { &q * &Rational::from_integer(m as i64) };

    // Constant terms of sum(avi(T_j)) - a*(|T|-1).
    let branch_sum = scale(QuadNumber::from_rational(frac(1, 2)) - &a, spec.size1)
        + scale(
            QuadNumber::from_rational(frac(2, 3)) - &a * &frac(2, 1),
            spec.size2,
        )
        + scale(
            QuadNumber::one() - &a * &frac(3, 1),
            spec.size3_center + spec.size3_leaf,
        )
        + scale(big.clone(), spec.size4_plus);
    // Constant terms of sum(avi(T_j - v_j)) - a*(|T|-1-k).
    let removed_sum = scale(QuadNumber::from_rational(frac(1, 2)) - &a, spec.size2)
        + scale(QuadNumber::one() - &a * &frac(2, 1), spec.size3_center)
        + scale(
            QuadNumber::from_rational(frac(2, 3)) - &a * &frac(2, 1),
            spec.size3_leaf,
        )
        + scale(big, spec.size4_plus);

    // Product of the per-branch quotients I(T_j - v_j)/I(T_j): exact for
    // small branches, within [1/2, 1] for each large branch.
    let fixed = frac(1, 2).pow(spec.size1 as i32).unwrap()
        * frac(2, 3).pow(spec.size2 as i32).unwrap()
        * frac(4, 5).pow(spec.size3_center as i32).unwrap()
        * frac(3, 5).pow(spec.size3_leaf as i32).unwrap();
    let q_min = &fixed * &frac(1, 2).pow(spec.size4_plus as i32).unwrap();
    let q_max = fixed;
    // rho = 1/(1 + prod q) is decreasing in the product.
    let rho_lo = Rational::one()
        .checked_div(&(Rational::one() + &q_max))
        .unwrap();
    let rho_hi = Rational::one()
        .checked_div(&(Rational::one() + &q_min))
        .unwrap();

    let k = Rational::from_integer(spec.branch_count as i64);
    let bound_at = |rho: &Rational| -> QuadNumber {
        let rho_q = QuadNumber::from_rational(rho.clone());
        let complement = QuadNumber::from_rational(Rational::one() - rho);
        &rho_q * &branch_sum
            + complement * (QuadNumber::one() - &a * &k + &removed_sum)
            - a.clone()
    };
    let at_lo = bound_at(&rho_lo);
    let at_hi = bound_at(&rho_hi);
    let lower_bound = if at_lo <= at_hi {
        at_lo.clone()
    } else {
        at_hi.clone()
    };
    let margin = &lower_bound - &nonpath_intercept();
    CaseBound {
        spec: *spec,
        rho_interval: (rho_lo, rho_hi),
        bound_at_endpoints: (at_lo, at_hi),
        lower_bound,
        margin,
    }
}

/// The full 35 + 70 = 105 case table.
pub fn case_table() -> Vec<CaseBound> {
    let mut out = Vec::with_capacity(105);
    for k in [3usize, 4] {
        for spec in enumerate_cases(k).expect("k is 3 or 4") {
            out.push(case_lower_bound(&spec));
        }
    }
    out
}

/// Runs every case and checks that all margins are nonnegative, with a
/// zero margin exactly at the known worst case (one two-vertex branch
/// and two branches of four or more vertices at a degree-3 vertex).
pub fn verify_case_table() -> VerificationReport {
    let claim = "nonpath-case-analysis";
    let table = case_table();
    let range = format!("{} cases", table.len());
    let worst = CaseSpec {
        branch_count: 3,
        size1: 0,
        size2: 1,
        size3_center: 0,
        size3_leaf: 0,
        size4_plus: 2,
    };
    let mut zero_margins = Vec::new();
    for cb in &table {
        if cb.margin.signum() < 0 {
            let witness = Witness {
                vertex_count: 0,
                edges: Vec::new(),
                values: [
                    ("case".to_string(), cb.spec.to_string()),
                    ("margin".to_string(), cb.margin.to_string()),
                ]
                .into_iter()
                .collect(),
            };
            return VerificationReport::counterexample(claim, range, witness)
                .with_note("negative margin".to_string());
        }
        if cb.margin.signum() == 0 {
            zero_margins.push(cb.spec);
        }
    }
    if table.len() != 105 || zero_margins != vec![worst] {
        let witness = Witness {
            vertex_count: 0,
            edges: Vec::new(),
            values: [(
                "zero-margin-cases".to_string(),
                format!("{zero_margins:?}"),
            )]
            .into_iter()
            .collect(),
        };
        return VerificationReport::counterexample(claim, range, witness)
            .with_note("zero-margin set differs from the expected worst case");
    }
    let worst_bound = case_lower_bound(&worst);
    VerificationReport::verified(claim, range)
        .with_note("all margins nonnegative")
        .with_note(format!(
            "unique zero margin at {worst}; rho interval [{}, {}]",
            worst_bound.rho_interval.0, worst_bound.rho_interval.1
        ))
        .with_note(format!("worst-case bound = {}", worst_bound.lower_bound))
}

/// The scalar inequalities used around the case analysis, each checked
/// exactly in the quadratic field.
pub fn verify_auxiliary_inequalities() -> VerificationReport {
    let claim = "auxiliary-inequalities";
    let a = path_slope();
    let b = nonpath_intercept();
    // (label, lhs, rhs) with the claim lhs < rhs.
    let strict_less: Vec<(&str, QuadNumber, QuadNumber)> = vec![
        (
            "4(sqrt5-1)/9 < 1",
            QuadNumber::new(frac(-4, 9), frac(4, 9)),
            QuadNumber::one(),
        ),
        (
            "0 < 2/sqrt5 - 3/4 - a/2",
            QuadNumber::zero(),
            offset_second_min() - &a * &frac(1, 2),
        ),
        (
            "3a < 5/6",
            &a * &frac(3, 1),
            QuadNumber::from_rational(frac(5, 6)),
        ),
        (
            "2a < 7/12",
            &a * &frac(2, 1),
            QuadNumber::from_rational(frac(7, 12)),
        ),
        ("a < 1/3", a.clone(), QuadNumber::from_rational(frac(1, 3))),
        (
            "b < 4(1/sqrt5 - 1/3) - a",
            b.clone(),
            &offset_min() * &frac(4, 1) - &a,
        ),
        ("sqrt5/2 - 25/26 < b", offset_upper(), b.clone()),
    ];
    let mut report = VerificationReport::verified(claim, "scalar inequalities + n = 4..=200");
    for (label, lhs, rhs) in &strict_less {
        if (rhs - lhs).signum() <= 0 {
            let witness = Witness {
                vertex_count: 0,
                edges: Vec::new(),
                values: [("inequality".to_string(), label.to_string())]
                    .into_iter()
                    .collect(),
            };
            return VerificationReport::counterexample(claim, "scalar inequalities", witness);
        }
        report = report.with_note(format!("{label}: holds ({lhs} vs {rhs})"));
    }
    // avi(P_n) <= a*n + sqrt5/2 - 25/26 for 4 <= n <= 200 (equality at n=5).
    let cap = offset_upper();
    for n in 4..=200 {
        let value = match path_closed_form(n) {
            Ok(v) => v,
            Err(e) => {
                let witness = Witness {
                    vertex_count: 0,
                    edges: Vec::new(),
                    values: [("error".to_string(), e.to_string())].into_iter().collect(),
                };
                return VerificationReport::counterexample(claim, "path upper bound", witness);
            }
        };
        if (&value.offset - &cap).signum() > 0 {
            let witness = Witness {
                vertex_count: 0,
                edges: Vec::new(),
                values: [
                    ("n".to_string(), n.to_string()),
                    ("offset".to_string(), value.offset.to_string()),
                ]
                .into_iter()
                .collect(),
            };
            return VerificationReport::counterexample(claim, "path upper bound", witness);
        }
    }
    report.with_note("avi(P_n) <= a*n + sqrt5/2 - 25/26 for n = 4..=200")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_values() {
        assert_eq!(path_avi_recurrence(1), frac(1, 2));
        assert_eq!(path_avi_recurrence(2), frac(2, 3));
        assert_eq!(path_avi_recurrence(3), frac(5, 5) * frac(1, 1));
        assert_eq!(path_avi_recurrence(4), frac(5, 4));
        assert_eq!(path_avi_recurrence(5), frac(20, 13));
    }

    #[test]
    fn closed_form_small_values() {
        let v1 = path_closed_form(1).unwrap();
        assert_eq!(v1.rational_value, frac(1, 2));
        // c_1 = sqrt5/10
        assert_eq!(v1.offset, QuadNumber::new(frac(0, 1), frac(1, 10)));

        let v2 = path_closed_form(2).unwrap();
        assert_eq!(v2.rational_value, frac(2, 3));
        assert_eq!(v2.offset, offset_min());

        let v5 = path_closed_form(5).unwrap();
        assert_eq!(v5.rational_value, frac(20, 13));
        assert_eq!(v5.offset, offset_upper());
    }

    #[test]
    fn closed_form_full_table_of_offsets() {
        // c_3 = 3/(2 sqrt5) - 1/2, c_4 = 2/sqrt5 - 3/4.
        assert_eq!(
            path_closed_form(3).unwrap().offset,
            QuadNumber::new(frac(-1, 2), frac(3, 10))
        );
        assert_eq!(path_closed_form(4).unwrap().offset, offset_second_min());
        // Ordering c_2 < c_4 < c_5 < c_3 < c_1.
        let c: Vec<QuadNumber> = (1..=5)
            .map(|n| path_closed_form(n).unwrap().offset)
            .collect();
        assert!(c[1] < c[3] && c[3] < c[4] && c[4] < c[2] && c[2] < c[0]);
    }

    #[test]
    fn closed_form_matches_recurrence_and_engine() {
        for n in 1..=80 {
            let v = path_closed_form(n).unwrap();
            assert_eq!(v.rational_value, path_avi_recurrence(n));
        }
        assert!(path_closed_form(0).is_err());
        assert!(path_closed_form(501).is_err());
        assert!(path_closed_form(500).is_ok());
    }

    #[test]
    fn offsets_converge_to_the_limit() {
        let limit = limit_offset();
        let tolerance = QuadNumber::from_rational(frac(1, 1_000_000));
        for n in 40..=200 {
            let c = path_closed_form(n).unwrap().offset;
            assert!((&c - &limit).abs() < tolerance, "n={n}");
        }
    }

    #[test]
    fn error_term_report() {
        let report = verify_error_term(200).unwrap();
        assert!(report.is_verified(), "{report:?}");
        assert!(verify_error_term(4).is_err());
        assert!(verify_path_formula(200).unwrap().is_verified());
    }

    #[test]
    fn case_enumeration_counts() {
        assert_eq!(enumerate_cases(3).unwrap().len(), 35);
        assert_eq!(enumerate_cases(4).unwrap().len(), 70);
        assert!(enumerate_cases(2).is_err());
        assert!(enumerate_cases(5).is_err());
        assert_eq!(case_table().len(), 105);
    }

    #[test]
    fn worst_case_is_exactly_the_intercept() {
        let worst = CaseSpec {
            branch_count: 3,
            size1: 0,
            size2: 1,
            size3_center: 0,
            size3_leaf: 0,
            size4_plus: 2,
        };
        let cb = case_lower_bound(&worst);
        assert_eq!(cb.rho_interval, (frac(3, 5), frac(6, 7)));
        assert_eq!(cb.lower_bound, nonpath_intercept());
        assert!(cb.margin.is_zero());
    }

    #[test]
    fn all_leaf_case_has_positive_margin() {
        // Three single-vertex branches: the 4-vertex star, bound 13/9 - 4a.
        let spec = CaseSpec {
            branch_count: 3,
            size1: 3,
            size2: 0,
            size3_center: 0,
            size3_leaf: 0,
            size4_plus: 0,
        };
        let cb = case_lower_bound(&spec);
        assert_eq!(cb.rho_interval, (frac(8, 9), frac(8, 9)));
        let expected =
            QuadNumber::from_rational(frac(13, 9)) - &path_slope() * &frac(4, 1);
        assert_eq!(cb.lower_bound, expected);
        assert!(cb.margin.signum() > 0);
    }

    #[test]
    fn endpoint_bounds_differ_only_when_the_slope_is_nonzero() {
        for cb in case_table() {
            let degenerate = cb.rho_interval.0 == cb.rho_interval.1;
            if degenerate {
                assert_eq!(cb.bound_at_endpoints.0, cb.bound_at_endpoints.1);
            }
        }
    }

    #[test]
    fn case_table_verifies() {
        let report = verify_case_table();
        assert!(report.is_verified(), "{report:?}");
    }

    #[test]
    fn worst_case_algebraic_identity() {
        // 13/(2 sqrt5) - 5/2 + (6/7)(1/6 - 1/sqrt5) = b
        let constant = QuadNumber::new(frac(-5, 2), frac(13, 10));
        let slope = QuadNumber::new(frac(1, 6), frac(-1, 5));
        let at_rho = constant + &slope * &frac(6, 7);
        assert_eq!(at_rho, nonpath_intercept());
    }

    #[test]
    fn auxiliary_inequalities_verify() {
        let report = verify_auxiliary_inequalities();
        assert!(report.is_verified(), "{report:?}");
    }
}
