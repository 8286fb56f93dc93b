//! Fast kernels against slow, independent computations.

use gdiv::constants::{compute_constant, tail_estimate, ConstantKind, ProductConfig};
use gdiv::divisors::{brute_force_frak_t_k, eval, frak_t_k, OracleBounds};
use gdiv::primes::{factor_gauss, factor_rational, gaussian_primes_up_to, is_gaussian_prime};
use gdiv::summing::{exact_summatory, lattice_summatory_oracle, norm_coefficients};
use gdiv::{Argument, FamilyKind, FunctionFamily, GaussInt};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn fam(kind: FamilyKind, k: u32) -> FunctionFamily {
    FunctionFamily::new(kind, k).unwrap()
}

/// `b(1..=x)` for Gaussian families, `f(1..=x)` for rational ones.
fn coefficients(f: &FunctionFamily, x: u64) -> Vec<u64> {
    if f.is_gaussian() {
        let t = norm_coefficients(f, x).unwrap();
        (1..=x).map(|n| t.get(n).unwrap()).collect()
    } else {
        (1..=x).map(|n| eval(f, &Argument::Rational(n)).unwrap()).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn random_factorizations_round_trip() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut done = 0;
    while done < 100_000 {
        let z = GaussInt::new(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        if z.is_zero() || z.norm().unwrap() > 1_000_000 {
            continue;
        }
        let f = factor_gauss(&z).unwrap();
        assert_eq!(f.recompose().unwrap(), z);
        for (p, _) in &f.factors {
            assert_eq!(p.canonical().unwrap(), *p);
            assert!(is_gaussian_prime(p).unwrap());
        }
        done += 1;
    }
}

#[test]
fn frak_t_k_matches_tuple_counting() {
    for a in 1i64..=15 {
        for b in 0i64..=15 {
            let z = GaussInt::new(a, b);
            if z.norm().unwrap() > 200 {
                continue;
            }
            for k in [2, 3] {
                assert_eq!(
                    frak_t_k(k, &z).unwrap(),
                    brute_force_frak_t_k(k, &z, OracleBounds::default()).unwrap(),
                    "{z}, k={k}"
                );
            }
        }
    }
}

#[test]
fn families_are_multiplicative() {
    let mut rng = StdRng::seed_from_u64(11);
    for kind in FamilyKind::ALL {
        let f = fam(kind, 3);
        for _ in 0..2500 {
            if kind.is_gaussian() {
                let z = GaussInt::new(rng.gen_range(1..300), rng.gen_range(0..300));
                let w = GaussInt::new(rng.gen_range(1..300), rng.gen_range(0..300));
                if !z.gcd(&w).unwrap().is_unit() {
                    continue;
                }
                let v = |x: GaussInt| eval(&f, &Argument::Gaussian(x)).unwrap();
                assert_eq!(v(z.checked_mul(&w).unwrap()), v(z) * v(w), "{z} {w}");
            } else {
                let (m, n) = (rng.gen_range(1..100_000u64), rng.gen_range(1..100_000u64));
                if gcd(m, n) != 1 {
                    continue;
                }
                let v = |x: u64| eval(&f, &Argument::Rational(x)).unwrap();
                assert_eq!(v(m * n), v(m) * v(n));
            }
        }
    }
}

#[test]
fn norm_coefficients_are_multiplicative() {
    let mut rng = StdRng::seed_from_u64(13);
    for kind in [FamilyKind::FrakTEK, FamilyKind::FrakTEKStar] {
        let t = norm_coefficients(&fam(kind, 2), 1_000_000).unwrap();
        let mut pairs = 0;
        while pairs < 10_000 {
            let (m, n) = (rng.gen_range(1..1000u64), rng.gen_range(1..1000u64));
            if gcd(m, n) != 1 {
                continue;
            }
            assert_eq!(t.get(m * n).unwrap(), t.get(m).unwrap() * t.get(n).unwrap());
            pairs += 1;
        }
    }
}

#[test]
fn norm_coefficients_match_class_sums() {
    let f = fam(FamilyKind::FrakTEKStar, 3);
    let x = 5000u64;
    let mut direct = vec![0u64; x as usize + 1];
    for a in 1i64..=71 {
        for b in 0i64..=71 {
            let z = GaussInt::new(a, b);
            let n = z.norm().unwrap() as u64;
            if n <= x {
                direct[n as usize] += eval(&f, &Argument::Gaussian(z)).unwrap();
            }
        }
    }
    let t = norm_coefficients(&f, x).unwrap();
    for n in 1..=x {
        assert_eq!(t.get(n).unwrap(), direct[n as usize], "n={n}");
    }
}

#[test]
fn sieve_matches_lattice_for_every_small_x() {
    for kind in FamilyKind::ALL {
        for k in [2, 3] {
            let f = fam(kind, k);
            let mut running = 0;
            for (x, c) in (1..=1000).zip(coefficients(&f, 1000)) {
                running += c;
                assert_eq!(lattice_summatory_oracle(&f, x).unwrap(), running, "{f} x={x}");
            }
            assert_eq!(exact_summatory(&f, 10_000).unwrap(), lattice_summatory_oracle(&f, 10_000).unwrap());
        }
    }
}

#[test]
fn summatory_is_monotone() {
    for kind in FamilyKind::ALL {
        let f = fam(kind, 2);
        let total: u64 = coefficients(&f, 100_000).iter().sum();
        assert_eq!(total, exact_summatory(&f, 100_000).unwrap());
        let mut prev = 0;
        for x in [1, 10, 100, 1000, 10_000, 100_000] {
            let s = exact_summatory(&f, x).unwrap();
            assert!(s >= prev);
            prev = s;
        }
    }
}

#[test]
fn gauss_circle() {
    let one = FunctionFamily::gaussian_indicator();
    assert_eq!(lattice_summatory_oracle(&one, 100).unwrap(), 79);
    let x = 1_000_000u64;
    let count = exact_summatory(&one, x).unwrap();
    assert_eq!(count, lattice_summatory_oracle(&one, x).unwrap());
    let dev = (count as f64 - std::f64::consts::FRAC_PI_4 * x as f64).abs();
    assert!(dev <= 3.0 * (x as f64).sqrt(), "{dev}");
}

#[test]
fn split_primes_pair_up() {
    let mut by_norm = std::collections::BTreeMap::<i64, Vec<GaussInt>>::new();
    for p in gaussian_primes_up_to(200_000) {
        by_norm.entry(p.norm().unwrap()).or_default().push(p);
    }
    for (n, ps) in by_norm {
        let n = n as u64;
        match ps.as_slice() {
            [p, q] => {
                assert_eq!(n % 4, 1);
                assert_eq!(*q, GaussInt::new(p.im, p.re));
                assert!(p.re > p.im && p.im > 0);
            }
            [p] if n == 2 => assert_eq!(*p, GaussInt::new(1, 1)),
            [p] => {
                let f = factor_rational(n).unwrap();
                assert_eq!(f.factors.len(), 1);
                let (q, e) = f.factors[0];
                assert_eq!((e, q % 4), (2, 3));
                assert_eq!(*p, GaussInt::from_int(q as i64));
            }
            other => panic!("{} primes of norm {n}", other.len()),
        }
    }
}

#[test]
fn constants_stabilize_with_cutoff() {
    for kind in [ConstantKind::C, ConstantKind::CStar, ConstantKind::A] {
        let at = |p: u64| compute_constant::<f64>(kind, 2, &ProductConfig { max_tail: 1.0, ..ProductConfig::with_cutoff(p) }).unwrap();
        let (lo, mid, hi) = (at(100_000), at(1_000_000), at(10_000_000));
        assert!((mid.value - lo.value).abs() <= 10.0 * tail_estimate(kind, 2, 100_000).unwrap(), "{kind:?}");
        assert!((hi.value - mid.value).abs() <= 1e-6, "{kind:?}");
    }
}

#[test]
fn champion_scan_matches_lattice_maxima() {
    use gdiv::champions::{champion_scan, order_ratio};
    let x = 100_000u64;
    let f = fam(FamilyKind::FrakTEK, 2);
    let mut best_at = vec![0u64; x as usize + 1];
    for a in 1i64..=316 {
        for b in 0i64..=316 {
            let z = GaussInt::new(a, b);
            let n = z.norm().unwrap() as u64;
            if n <= x {
                let v = eval(&f, &Argument::Gaussian(z)).unwrap();
                best_at[n as usize] = best_at[n as usize].max(v);
            }
        }
    }
    let mut expected = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for n in 16..=x {
        let v = best_at[n as usize];
        if v > 0 && order_ratio(v, n) > best {
            best = order_ratio(v, n);
            expected.push((n, v));
        }
    }
    let got: Vec<(u64, u64)> = champion_scan(&f, x).unwrap().iter().map(|r| (r.n_or_norm, r.value)).collect();
    assert_eq!(got, expected);
}

#[test]
fn champion_running_max_at_one_million() {
    let recs = gdiv::champions::champion_scan(&fam(FamilyKind::FrakTEK, 2), 1_000_000).unwrap();
    let last = recs.last().unwrap();
    // 2⁶·5⁴: log 16 · log log N / log N, well above the limsup log 2 / 2
    assert_eq!((last.n_or_norm, last.value), (40_000, 16));
    assert!(last.ratio > 0.0 && last.ratio < 2.0 * std::f64::consts::LN_2 / 2.0);
}
