//! Property tests: comparison against an integer-scaling oracle, field
//! algebra, engine recursions on random graphs, and the averaging
//! identities for random set families.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use avi_core::engine::{self, indep_poly};
use avi_core::exact::{frac, QuadNumber, Rational};
use avi_core::family::SetFamily;
use avi_core::graph::Graph;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=1000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn quad_strategy() -> impl Strategy<Value = QuadNumber> {
    (rational_strategy(), rational_strategy()).prop_map(|(p, q)| QuadNumber::new(p, q))
}

proptest! {
    /// Comparison agrees with 10^30-scaled integer approximations. With
    /// coefficients bounded by 1000 in numerator and denominator, two
    /// distinct values differ by far more than 10^-30, so the scaled
    /// floors are conclusive.
    #[test]
    fn cmp_matches_scaled_integer_oracle(x in quad_strategy(), y in quad_strategy()) {
        let fx = x.floor_scaled(30);
        let fy = y.floor_scaled(30);
        if x == y {
            prop_assert_eq!(fx, fy);
        } else {
            prop_assert_ne!(&fx, &fy);
            prop_assert_eq!(x.cmp(&y), fx.cmp(&fy));
        }
    }

    #[test]
    fn field_algebra(x in quad_strategy(), y in quad_strategy(), z in quad_strategy()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, QuadNumber::zero());
        if !y.is_zero() {
            let q = x.checked_div(&y).unwrap();
            prop_assert_eq!(q * &y, x);
        }
    }

    #[test]
    fn rendering_round_trips(x in quad_strategy(), r in rational_strategy()) {
        prop_assert_eq!(x.to_string().parse::<QuadNumber>().unwrap(), x);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
}

#[test]
fn golden_powers_project_to_fibonacci() {
    // (phi^n - (-1)^n phi^-n) / sqrt5 collapses to the integer F_n.
    let (mut f_prev, mut f_cur) = (BigInt::from(0), BigInt::from(1));
    for n in 1..=50i64 {
        let mut diff = QuadNumber::golden_power(n);
        let inv = QuadNumber::golden_power(-n);
        if n % 2 == 0 {
            diff = diff - inv;
        } else {
            diff = diff + inv;
        }
        let fib = diff
            .checked_div(&QuadNumber::sqrt5())
            .unwrap()
            .as_rational()
            .expect("sqrt5 residue must vanish");
        assert!(fib.is_integer());
        assert_eq!(fib.numer(), &f_cur, "F_{n}");
        let next = &f_prev + &f_cur;
        f_prev = std::mem::replace(&mut f_cur, next);
    }
}

fn random_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn deletion_recursions_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..100 {
        let n = rng.random_range(1..=10);
        let g = random_graph(n, &mut rng);
        let s = engine::summary(&g);
        for v in g.vertices() {
            let sv = engine::summary(&g.remove_vertex(v).unwrap());
            let sn = engine::summary(&g.remove_closed_nbhd(v).unwrap());
            assert_eq!(s.count, &sv.count + &sn.count);
            assert_eq!(s.total, &sv.total + &sn.total + &sn.count);
        }
    }
}

#[test]
fn polynomial_shape_on_random_graphs() {
    // coeffs[0] = 1, every coefficient up to the degree is positive, and
    // count/total are the evaluation and derivative at 1.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..100 {
        let n = rng.random_range(0..=12);
        let g = random_graph(n, &mut rng);
        let poly = indep_poly(&g);
        assert_eq!(poly.coeffs()[0], BigInt::from(1));
        assert!(poly.coeffs().iter().all(|c| c > &BigInt::from(0)));
        assert!(poly.independence_number() <= n);
        let by_sum: BigInt = poly.coeffs().iter().sum();
        assert_eq!(poly.count(), by_sum);
        assert_eq!(
            poly.eval(&Rational::one()),
            Rational::from_integer(poly.count())
        );
        assert_eq!(
            poly.weighted_total(&Rational::one()),
            Rational::from_integer(poly.total())
        );
    }
}

#[test]
fn polynomial_is_multiplicative_over_disjoint_unions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..50 {
        let a = random_graph(rng.random_range(1..=7), &mut rng);
        let b = random_graph(rng.random_range(1..=7), &mut rng);
        let union = Graph::disjoint_union(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(indep_poly(&union), indep_poly(&a).mul(&indep_poly(&b)));
    }
}

#[test]
fn star_and_edgeless_closed_forms_to_thirty() {
    for n in 1..=30usize {
        let two_pow = |k: usize| BigInt::from(1) << k;
        let e = engine::summary(&Graph::empty(n).unwrap());
        assert_eq!(e.count, two_pow(n));
        assert_eq!(e.total, BigInt::from(n) * two_pow(n - 1));

        let s = engine::summary(&Graph::star(n).unwrap());
        assert_eq!(s.count, two_pow(n - 1) + 1);
        let expected_total = if n == 1 {
            BigInt::from(1)
        } else {
            BigInt::from(n - 1) * two_pow(n - 2) + 1
        };
        assert_eq!(s.total, expected_total);
        // avi(S_n) = (n-1)/2 + (3-n)/(2^n + 2)
        let expected_avg = frac(n as i64 - 1, 2)
            + Rational::new(BigInt::from(3 - n as i64), two_pow(n) + 2).unwrap();
        assert_eq!(s.average, expected_avg);
    }
}

/// A random family over a small ground set whose member cardinalities are
/// not all equal.
fn random_family(rng: &mut impl Rng) -> SetFamily {
    loop {
        let ground_size = rng.random_range(2..=8u32);
        let ground = (1u64 << ground_size) - 1;
        let mut members: Vec<u64> = (0..ground + 1)
            .filter(|_| rng.random_bool(0.3))
            .collect();
        members.dedup();
        if members.len() < 2 {
            continue;
        }
        let first = members[0].count_ones();
        if members.iter().all(|m| m.count_ones() == first) {
            continue;
        }
        return SetFamily::new(ground, members).unwrap();
    }
}

#[test]
fn averaged_inequality_and_identities_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..200 {
        let fam = random_family(&mut rng);
        let ground_size = fam.ground().count_ones() as u64;

        let mut restricted_total = 0u64;
        let mut restricted_count = 0u64;
        let mut scan = fam.ground();
        while scan != 0 {
            let x = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if let Ok(r) = fam.restricted(x) {
                restricted_total += r.size_total();
                restricted_count += r.len() as u64;
            }
        }
        // Counting identities from double counting the removals.
        let s = fam.size_total();
        let k2: u64 = fam
            .counts_by_size()
            .iter()
            .enumerate()
            .map(|(k, c)| (k * k) as u64 * c)
            .sum();
        assert_eq!(restricted_total, ground_size * s - k2);
        assert_eq!(restricted_count, ground_size * fam.len() as u64 - s);

        // The averaged inequality: av(B) > (sum of restricted totals) /
        // (sum of restricted counts), strictly.
        assert!(restricted_count > 0);
        let pooled = Rational::new(restricted_total as i64, restricted_count as i64).unwrap();
        assert!(fam.average() > pooled, "family {fam:?}");

        // And the concrete witness achieves a strict decrease.
        let x0 = fam.find_decreasing_element().unwrap();
        let restricted = fam.restricted(x0).unwrap();
        assert!(restricted.average() < fam.average());
    }
}

#[test]
fn family_witness_agrees_with_engine_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..100 {
        let n = rng.random_range(1..=9);
        let g = random_graph(n, &mut rng);
        let fam = avi_core::family::independent_family(&g).unwrap();
        let x0 = fam.find_decreasing_element().unwrap();
        let by_family = fam.restricted(x0).unwrap().average();
        let by_engine = engine::avi(&g.remove_vertex(x0).unwrap());
        assert_eq!(by_family, by_engine);
        assert!(by_engine < engine::avi(&g));
    }
}
