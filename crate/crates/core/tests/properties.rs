use diffcoh::fields::restrict_scalars;
use diffcoh::linalg::{self, Field};
use diffcoh::ore::{ore_mul, right_mul_one_minus_t, OrePoly, RTildeElem};
use diffcoh::random::{self, random_elem, random_matrix, random_ore_poly};
use diffcoh::ratdiff::{
    decompose_orbits, direct_sum, ga_monomials, ga_orbit_count, orbit_representative, GradedDiffModule,
};
use diffcoh::{FieldSpec, SemilinearMap};
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (3, 3)];

fn field(i: usize, sigma_power: i64) -> FieldSpec {
    let (p, n) = FIELDS[i % FIELDS.len()];
    FieldSpec::standard(p, n, sigma_power.rem_euclid(n as i64)).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..9, a in 0u32..625, b in 0u32..625, c in 0u32..625) {
        let f = field(fi, 0);
        let q = f.order();
        let (a, b, c) = (f.element(a % q), f.element(b % q), f.element(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if a != f.zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism(fi in 0usize..9, s in 0i64..4, a in 0u32..625, b in 0u32..625) {
        let f = field(fi, s);
        let q = f.order();
        let (a, b) = (f.element(a % q), f.element(b % q));
        prop_assert_eq!(f.sigma(f.add(a, b)), f.add(f.sigma(a), f.sigma(b)));
        prop_assert_eq!(f.sigma(f.mul(a, b)), f.mul(f.sigma(a), f.sigma(b)));
        prop_assert_eq!(f.sigma_inv(f.sigma(a)), a);
        // x^p computed by repeated multiplication.
        let frob = (0..f.p()).fold(f.one(), |acc, _| f.mul(acc, a));
        prop_assert_eq!(f.frobenius_power(a, 1), frob);
    }

    #[test]
    fn prime_coordinates_round_trip(fi in 0usize..9, seed: u64, d in 1usize..4) {
        let f = field(fi, 0);
        let mut rng = random::rng(seed);
        let v: Vec<_> = (0..d).map(|_| random_elem(&f, &mut rng)).collect();
        prop_assert_eq!(f.from_prime_coords(&f.to_prime_coords(&v)), v);
    }

    #[test]
    fn restriction_of_scalars_matches_the_semilinear_map(
        fi in 0usize..9, tw in 0i64..4, seed: u64, d in 1usize..4
    ) {
        let f = field(fi, 0);
        let tw = tw % f.n() as i64;
        let mut rng = random::rng(seed);
        let map = SemilinearMap::new(&f, random_matrix(&f, d, d, &mut rng), tw);
        let v: Vec<_> = (0..d).map(|_| random_elem(&f, &mut rng)).collect();
        let restricted = restrict_scalars(&f, &map);
        let fp = f.prime_field();
        let lhs = linalg::mat_vec(&fp, &restricted, &f.to_prime_coords(&v));
        prop_assert_eq!(lhs, f.to_prime_coords(&map.apply(&f, &v)));
    }

    #[test]
    fn twisted_polynomial_ring_laws(fi in 3usize..9, s in 0i64..4, seed: u64) {
        let f = field(fi, s);
        let mut rng = random::rng(seed);
        let a = random_ore_poly(&f, 5, &mut rng);
        let b = random_ore_poly(&f, 5, &mut rng);
        let c = random_ore_poly(&f, 5, &mut rng);
        prop_assert_eq!(
            ore_mul(&ore_mul(&a, &b).unwrap(), &c).unwrap(),
            ore_mul(&a, &ore_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            ore_mul(&a, &b.add(&c).unwrap()).unwrap(),
            ore_mul(&a, &b).unwrap().add(&ore_mul(&a, &c).unwrap()).unwrap()
        );
        let one = OrePoly::one(&f);
        prop_assert_eq!(ore_mul(&one, &a).unwrap(), a.clone());
        prop_assert_eq!(ore_mul(&a, &one).unwrap(), a.clone());
        prop_assert_eq!(
            right_mul_one_minus_t(&a),
            ore_mul(&a, &OrePoly::one_minus_t(&f)).unwrap()
        );
    }

    #[test]
    fn colimit_module_identifications(fi in 3usize..9, s in 1i64..4, level in 0usize..6, idx in 0u32..625) {
        let f = field(fi, s);
        let r = f.element(idx % f.order());
        let x = RTildeElem::new(&f, level, r).unwrap();
        // (i, r) and (i + 1, σ(r)) name the same class.
        prop_assert!(x == RTildeElem::new(&f, level + 1, f.sigma(r)).unwrap());
        prop_assert!(x.sigma().sigma_inv() == x);
        prop_assert!(x.sigma_inv().sigma() == x);
        prop_assert!(RTildeElem::alpha(&f, x.iso_to_inverse()).unwrap() == x);
    }

    #[test]
    fn orbit_decomposition_partitions_the_module(p in prop::sample::select(vec![2u8, 3, 5]), seed: u64) {
        let mut rng = random::rng(seed);
        let m = random::random_graded_module(p, 12, 3, &mut rng);
        let parts = decompose_orbits(&m);
        let mut seen = std::collections::BTreeSet::new();
        for (class, _) in &parts {
            for &j in &class.chain {
                prop_assert!(seen.insert(j), "weight {} in two classes", j);
                prop_assert_eq!(orbit_representative(p, j), class.representative);
            }
        }
        prop_assert_eq!(seen.into_iter().collect::<Vec<_>>(), m.support().collect::<Vec<_>>());
        let dims: usize = parts.iter().map(|(_, part)| part.total_dim()).sum();
        prop_assert_eq!(dims, m.total_dim());
        let rebuilt = direct_sum(p, &parts.into_iter().map(|(_, part)| part).collect::<Vec<_>>());
        prop_assert_eq!(without_zero_weights(rebuilt), without_zero_weights(m));
    }
}

fn without_zero_weights(mut m: GradedDiffModule) -> GradedDiffModule {
    m.weights.retain(|_, d| *d > 0);
    m.xmaps.retain(|_, x| x.rows() > 0 && x.cols() > 0);
    m
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of degree `k` in `e` exterior generators of degree 1 and `s`
/// symmetric generators of degree 2.
fn monomial_count(e: u64, s: u64, k: u64) -> u64 {
    (0..=k / 2)
        .map(|j| {
            binomial(e, k - 2 * j)
                * if s == 0 {
                    u64::from(j == 0)
                } else {
                    binomial(s + j - 1, j)
                }
        })
        .sum()
}

#[test]
fn additive_group_orbit_counts_match_generating_functions() {
    for n in 4..10u32 {
        let n64 = n as u64;
        for k in 1..7usize {
            let all = monomial_count(n64 + 1, n64, k as u64);
            assert_eq!(ga_monomials(k, n).len() as u64, all, "degree {k}, truncation {n}");
            // Non-starts have every exterior index >= 1 and every symmetric index >= 2.
            let non_starts = monomial_count(n64, n64 - 1, k as u64);
            assert_eq!(
                ga_orbit_count(k, n) as u64,
                all - non_starts,
                "degree {k}, truncation {n}"
            );
        }
    }
}
