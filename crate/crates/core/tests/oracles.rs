//! Worked examples checked against small independent re-implementations (naive polynomial
//! arithmetic, brute-force enumeration, and `num-rational` for the interval map).

use ffdyn::dynamics::build_graph;
use ffdyn::fermat::{compose_check, fixed_points, flt_orbit_count, flt_orbits, t_apply, UnitRational};
use ffdyn::field::{
    find_irreducible, find_isomorphism, is_irreducible, make_ext_field, make_prime, zero_divisor_witness,
};
use ffdyn::theorem::{find_bijective_outside_family, frobenius_order};
use ffdyn::zeta::fixed_count_by_period;
use ffdyn::{IntPoly, PointClass};
use num_rational::Ratio;

/// Schoolbook product of two F_p polynomials (constant first), untrimmed.
fn naive_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
        }
    }
    out
}

/// Remainder modulo a monic polynomial, by repeated subtraction of shifted multiples.
fn naive_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let d = m.len() - 1;
    while a.len() > d {
        let top = a.pop().unwrap();
        let shift = a.len() - d;
        for k in 0..d {
            a[shift + k] = (a[shift + k] + (p - top) * m[k]) % p;
        }
    }
    a.resize(d, 0);
    a
}

fn naive_field_mul(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    naive_rem(naive_mul(a, b, p), m, p)
}

/// All monic polynomials of degree `d` over F_p.
fn monics(d: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| (0..p).map(move |c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    out.into_iter()
        .map(|mut v| {
            v.push(1);
            v
        })
        .collect()
}

/// Irreducible iff not a product of two monic polynomials of positive degree.
fn irreducible_by_products(poly: &[u64], p: u64) -> bool {
    let n = poly.len() - 1;
    for d in 1..n {
        for a in monics(d, p) {
            for b in monics(n - d, p) {
                if naive_mul(&a, &b, p) == poly {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn cubic_x3_plus_1_factors_over_f2() {
    assert_eq!(naive_mul(&[1, 1], &[1, 1, 1], 2), vec![1, 0, 0, 1]);
    assert!(!is_irreducible(&[1, 0, 0, 1], 2).unwrap());
}

#[test]
fn smallest_irreducibles_match_product_oracle() {
    // Frozen from the oracle: candidates in key order.
    assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
    assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);

    for (p, n) in [(2u64, 2usize), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let key = |c: &Vec<u64>| {
            c[..n]
                .iter()
                .enumerate()
                .map(|(i, &v)| v * p.pow(i as u32))
                .sum::<u64>()
        };
        let mut candidates = monics(n, p);
        candidates.sort_by_key(key);
        let oracle = candidates.into_iter().find(|c| irreducible_by_products(c, p)).unwrap();
        assert_eq!(find_irreducible(p, n).unwrap(), oracle, "p={p} n={n}");
    }
}

#[test]
fn reducible_f9_modulus_has_root_one() {
    // x^2 + 2 at x = 1: 1 + 2 = 0 mod 3.
    assert_eq!((1 + 2) % 3, 0);
    assert!(make_ext_field(3, 2, Some(&[2, 0, 1])).is_err());
}

#[test]
fn inverses_by_search() {
    let f5 = make_prime(5).unwrap();
    let three = f5.from_int(3);
    let oracle = (0..5).find(|b| 3 * b % 5 == 1).unwrap();
    assert_eq!(oracle, 2);
    assert_eq!(three.inv().unwrap(), f5.from_int(oracle));

    let m = [1, 1, 0, 1];
    assert_eq!(naive_field_mul(&[0, 1, 0], &[1, 0, 1], &m, 2), vec![1, 0, 0]);
    let f8 = make_ext_field(2, 3, Some(&m)).unwrap();
    assert_eq!(f8.modulus_root().inv().unwrap().coeffs(), &[1, 0, 1]);
}

#[test]
fn frobenius_of_x_in_alternate_f9() {
    let m = [2, 1, 1];
    let x = [0, 1];
    let cube = naive_field_mul(&naive_field_mul(&x, &x, &m, 3), &x, &m, 3);
    assert_eq!(cube, vec![2, 2]);
    let f9 = make_ext_field(3, 2, Some(&m)).unwrap();
    assert_eq!(f9.modulus_root().frobenius().coeffs(), &cube[..]);
}

#[test]
fn f8_isomorphism_by_scan() {
    let (ma, mb) = ([1u64, 1, 0, 1], [1u64, 0, 1, 1]);
    // Roots of t^3 + t + 1 in F_2[x]/(x^3 + x^2 + 1), by scanning all 8 elements.
    let elems: Vec<Vec<u64>> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
    let eval = |b: &Vec<u64>| {
        let b2 = naive_field_mul(b, b, &mb, 2);
        let b3 = naive_field_mul(&b2, b, &mb, 2);
        (0..3)
            .map(|k| (b3[k] + b[k] + u64::from(k == 0)) % 2)
            .collect::<Vec<_>>()
    };
    let roots: Vec<&Vec<u64>> = elems.iter().filter(|b| eval(b) == vec![0, 0, 0]).collect();
    assert_eq!(roots.len(), 3);

    let a = make_ext_field(2, 3, Some(&ma)).unwrap();
    let b = make_ext_field(2, 3, Some(&mb)).unwrap();
    let iso = find_isomorphism(&a, &b).unwrap();
    assert!(roots.contains(&&iso.image_of_generator.coeffs().to_vec()));
    // All 64 products and sums, with naive arithmetic on both sides.
    for i in 0..8 {
        for j in 0..8 {
            let prod_a = naive_field_mul(&elems[i], &elems[j], &ma, 2);
            let idx = |v: &[u64]| (v[0] + 2 * v[1] + 4 * v[2]) as usize;
            let lhs = iso.map[idx(&prod_a)];
            let rhs = naive_field_mul(&elems[iso.map[i] as usize], &elems[iso.map[j] as usize], &mb, 2);
            assert_eq!(lhs as usize, idx(&rhs));
            assert_eq!(iso.map[i ^ j], iso.map[i] ^ iso.map[j]);
        }
    }
}

#[test]
fn zero_divisor_of_twelve() {
    assert_eq!(2 * 6 % 12, 0);
    assert_eq!(zero_divisor_witness(12).unwrap(), Some((2, 6)));
}

#[test]
fn tail_of_x_plus_2_under_t2_plus_1() {
    let m = [2, 1, 1];
    let step = |v: &[u64]| {
        let mut sq = naive_field_mul(v, v, &m, 3);
        sq[0] = (sq[0] + 1) % 3;
        sq
    };
    // x+2 -> 0 -> 1 -> 2 -> 2
    let mut orbit = vec![vec![2, 1]];
    for _ in 0..4 {
        orbit.push(step(orbit.last().unwrap()));
    }
    assert_eq!(orbit, vec![vec![2, 1], vec![0, 0], vec![1, 0], vec![2, 0], vec![2, 0]]);

    let f9 = make_ext_field(3, 2, Some(&m)).unwrap();
    let d = build_graph(&IntPoly::parse("t^2+1").unwrap(), &f9).decompose();
    assert_eq!(
        d.classify(2 + 3).unwrap(),
        PointClass::Preperiodic { tail: 3, period: 1 }
    );
}

#[test]
fn sixth_iterate_fixes_f8() {
    let m = [1, 1, 0, 1];
    let step = |v: &[u64]| {
        let mut sq = naive_field_mul(v, v, &m, 2);
        sq[0] = (sq[0] + 1) % 2;
        sq
    };
    let fixed = (0..8u64)
        .filter(|&i| {
            let start = vec![i & 1, (i >> 1) & 1, (i >> 2) & 1];
            let mut v = start.clone();
            for _ in 0..6 {
                v = step(&v);
            }
            v == start
        })
        .count();
    assert_eq!(fixed, 8);
    let f8 = make_ext_field(2, 3, Some(&m)).unwrap();
    assert_eq!(
        fixed_count_by_period(&IntPoly::parse("t^2+1").unwrap(), &f8, 6).unwrap(),
        8
    );
}

#[test]
fn frobenius_permutation_order_by_composition() {
    let f8 = make_ext_field(2, 3, None).unwrap();
    let perm: Vec<u64> = f8.elements().map(|e| e.frobenius().index()).collect();
    let compose = |a: &[u64], b: &[u64]| a.iter().map(|&i| b[i as usize]).collect::<Vec<_>>();
    let two = compose(&perm, &perm);
    let three = compose(&two, &perm);
    assert_ne!(perm, (0..8).collect::<Vec<_>>());
    assert_ne!(two, (0..8).collect::<Vec<_>>());
    assert_eq!(three, (0..8).collect::<Vec<_>>());
    assert_eq!(frobenius_order(&f8), Some(3));
}

#[test]
fn linear_bijections_of_f2() {
    // All four maps a + b t on {0, 1}.
    let bijective: Vec<(u64, u64)> = (0..2)
        .flat_map(|a| (0..2).map(move |b| (a, b)))
        .filter(|&(a, b)| (a % 2) != ((a + b) % 2))
        .collect();
    assert_eq!(bijective, vec![(0, 1), (1, 1)]);
    let found = find_bijective_outside_family(&make_prime(2).unwrap(), 1).unwrap();
    assert_eq!(found, vec![IntPoly::new(vec![0, 1]), IntPoly::new(vec![1, 1])]);
}

fn t_ratio(n: u64, x: Ratio<u64>) -> Ratio<u64> {
    if x == Ratio::from_integer(1) {
        return x;
    }
    let y = x * n;
    y - y.floor()
}

fn unit(x: Ratio<u64>) -> UnitRational {
    UnitRational::new(*x.numer(), *x.denom()).unwrap()
}

#[test]
fn interval_map_against_rationals() {
    assert_eq!(t_ratio(3, Ratio::new(1, 2)), Ratio::new(1, 2));
    assert_eq!(t_ratio(2, Ratio::new(3, 5)), Ratio::new(1, 5));
    for n in 2..12u64 {
        for den in 1..30u64 {
            for k in 0..=den {
                let x = Ratio::new(k, den);
                assert_eq!(t_apply(n, unit(x)).unwrap(), unit(t_ratio(n, x)));
            }
        }
    }
}

#[test]
fn fixed_points_on_grid() {
    for n in [3u64, 8] {
        let oracle: Vec<UnitRational> = (0..n)
            .map(|k| Ratio::new(k, n - 1))
            .filter(|&x| t_ratio(n, x) == x)
            .map(unit)
            .collect();
        assert_eq!(fixed_points(n).unwrap(), oracle);
    }
}

#[test]
fn composition_on_grids() {
    for (m, l, den) in [(2u64, 3u64, 5u64), (3, 4, 11)] {
        let oracle = (0..=den).all(|k| {
            let x = Ratio::new(k, den);
            t_ratio(m, t_ratio(l, x)) == t_ratio(m * l, x)
        });
        assert!(oracle);
        assert_eq!(compose_check(m, l, den).unwrap(), oracle);
    }
}

/// Orbits of T_a on the fixed points of T_{a^p}, iterating the rational map directly.
fn rational_orbits(a: u64, p: u64) -> Vec<Vec<Ratio<u64>>> {
    let total = a.pow(p as u32);
    let mut points: Vec<Ratio<u64>> = (0..total - 1).map(|k| Ratio::new(k, total - 1)).collect();
    points.push(Ratio::from_integer(1));
    let mut seen = std::collections::HashSet::new();
    let mut orbits = Vec::new();
    for &x in &points {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = vec![x];
        seen.insert(x);
        let mut y = t_ratio(a, x);
        while y != x {
            seen.insert(y);
            orbit.push(y);
            y = t_ratio(a, y);
        }
        orbits.push(orbit);
    }
    orbits
}

#[test]
fn flt_orbits_against_rational_iteration() {
    for (a, p) in [(2u64, 2u64), (2, 3), (3, 5), (4, 3), (5, 2)] {
        let oracle = rational_orbits(a, p);
        let of_len_p = oracle.iter().filter(|o| o.len() as u64 == p).count() as u64;
        let rep = flt_orbit_count(a, p).unwrap();
        assert_eq!(rep.orbit_count, of_len_p, "a={a} p={p}");
        let ours: Vec<Vec<UnitRational>> = flt_orbits(a, p).unwrap();
        let theirs: Vec<Vec<UnitRational>> = oracle.iter().map(|o| o.iter().map(|&x| unit(x)).collect()).collect();
        assert_eq!(ours, theirs);
    }
    // Frozen: 2 orbits for (2, 3); 1 for (2, 2); 48 for (3, 5).
    assert_eq!(flt_orbit_count(2, 3).unwrap().orbit_count, 2);
    assert_eq!(flt_orbit_count(2, 2).unwrap().orbit_count, 1);
    assert_eq!(flt_orbit_count(3, 5).unwrap().orbit_count, 48);
}
