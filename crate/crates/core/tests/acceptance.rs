//! Acceptance gate. Runs every criterion, prints one line per criterion and
//! exits nonzero if any of them fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use padic_gj::banach::{
    banach_support_annihilation, check_nonarch_uncertainty, check_nonarch_uncertainty_swapped,
    nonarch_coherence, nonarch_pnvpm_norm, BiorthogonalSystem,
};
use padic_gj::error::Error;
use padic_gj::generator::{
    random_coefficients, random_onb_pair, random_rational, random_system_pair, random_unit_vector,
    random_unitary, random_vector, rng_for,
};
use padic_gj::linalg::{PMatrix, PVector};
use padic_gj::onb::{apply_unitary_to_onb, change_of_basis, OrthonormalBasis};
use padic_gj::rational::{padic_abs, ratio, ultranorm_to_rational, Prime, Rational, UltraNorm};
use padic_gj::uncertainty::{
    check_uncertainty, coherence, padic_shannon_entropy, pnvpm_norm, pnvpm_table, project,
    restricted_max, support_annihilation_check, IndexSubset, UncertaintyReport,
};

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// Valuation by repeated division, independent of the library.
fn oracle_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// `|x|_p` as a rational, from the oracle valuation.
fn oracle_abs(x: &Rational, p: u64) -> Rational {
    match oracle_valuation(x, p) {
        None => Rational::zero(),
        Some(v) => {
            let base = Rational::from_integer(BigInt::from(p));
            let mut out = Rational::one();
            for _ in 0..v.abs() {
                out *= &base;
            }
            if v > 0 {
                out.recip()
            } else {
                out
            }
        }
    }
}

fn as_rational(n: UltraNorm, p: &Prime) -> Rational {
    ultranorm_to_rational(n, p)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn random_subset<R: Rng>(n: usize, rng: &mut R) -> IndexSubset {
    IndexSubset::from_mask(n, rng.gen_range(0..1u64 << n))
}

/// A random admissible `(M, N)` for the Hilbert pair, falling back to
/// singletons and finally to empty sets.
fn admissible_pair<R: Rng>(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
    rng: &mut R,
) -> (IndexSubset, IndexSubset) {
    let n = tau.dim();
    for _ in 0..16 {
        let m = random_subset(n, rng);
        let k = random_subset(n, rng);
        if coherence(tau, omega, &m, &k).unwrap() < UltraNorm::ONE {
            return (m, k);
        }
    }
    (IndexSubset::empty(n), IndexSubset::empty(n))
}

fn test_vector<R: Rng>(p: &Prime, n: usize, rng: &mut R) -> PVector {
    match rng.gen_range(0..10) {
        0 => PVector::zeros(p.clone(), n),
        1..=4 => random_unit_vector(p, n, rng),
        _ => random_vector(p, n, rng),
    }
}

// 1 ────────────────────────────────────────────────────────────────────────

fn criterion_axioms() -> Verdict {
    let start = Instant::now();
    let per_prime: Vec<Result<(usize, usize), String>> = PRIMES
        .par_iter()
        .map(|&p| {
            let pr = prime(p);
            let mut rng = rng_for(0xA1 ^ p);
            let mut scalars = 0;
            while scalars < 10_000 {
                let x = wide_rational(p, &mut rng);
                let y = if rng.gen_bool(0.3) {
                    random_rational(&pr, &mut rng)
                } else {
                    wide_rational(p, &mut rng)
                };
                let (ax, ay) = (padic_abs(&x, &pr), padic_abs(&y, &pr));
                ensure(as_rational(ax, &pr) == oracle_abs(&x, p), || {
                    format!("p={p}: |{x}| disagrees with oracle")
                })?;
                ensure(padic_abs(&(&x * &y), &pr) == ax * ay, || {
                    format!("p={p}: |xy| != |x||y| at x={x}, y={y}")
                })?;
                let sum = padic_abs(&(&x + &y), &pr);
                ensure(sum <= ax.max(ay), || {
                    format!("p={p}: ultrametric fails at x={x}, y={y}")
                })?;
                if ax != ay {
                    ensure(sum == ax.max(ay), || {
                        format!("p={p}: strict case fails at x={x}, y={y}")
                    })?;
                }
                ensure(ax.is_zero() == x.is_zero(), || {
                    format!("p={p}: |x| = 0 mismatch at {x}")
                })?;
                scalars += 1;
            }
            let mut vectors = 0;
            while vectors < 2_000 {
                let n = rng.gen_range(1..=8);
                let x = test_vector(&pr, n, &mut rng);
                let y = random_vector(&pr, n, &mut rng);
                let z = random_vector(&pr, n, &mut rng);
                let alpha = random_rational(&pr, &mut rng);
                let ip = |a: &PVector, b: &PVector| a.inner_product(b).unwrap();
                // (i) non-degeneracy, tested against the unit vectors.
                let annihilates =
                    (0..n).all(|j| ip(&x, &PVector::unit(pr.clone(), n, j)).is_zero());
                ensure(annihilates == x.is_zero(), || {
                    format!("p={p}: non-degeneracy fails at {x:?}")
                })?;
                // (ii) symmetry.
                ensure(ip(&x, &y) == ip(&y, &x), || {
                    format!("p={p}: asymmetric form")
                })?;
                // (iii) linearity in the first argument.
                let lhs = ip(&x.scale(&alpha).add(&y).unwrap(), &z);
                ensure(lhs == &alpha * ip(&x, &z) + ip(&y, &z), || {
                    format!("p={p}: form is not linear")
                })?;
                // (iv) Cauchy-Schwarz type bound.
                ensure(
                    padic_abs(&ip(&x, &y), &pr) <= x.sup_norm() * y.sup_norm(),
                    || format!("p={p}: |<x,y>| > ||x|| ||y||"),
                )?;
                // Norm axioms of the sup norm.
                ensure(x.sup_norm().is_zero() == x.is_zero(), || {
                    format!("p={p}: ||x|| = 0 mismatch")
                })?;
                ensure(
                    x.scale(&alpha).sup_norm() == padic_abs(&alpha, &pr) * x.sup_norm(),
                    || format!("p={p}: ||ax|| != |a| ||x||"),
                )?;
                ensure(
                    x.add(&y).unwrap().sup_norm() <= x.sup_norm().max(y.sup_norm()),
                    || format!("p={p}: vector ultrametric fails"),
                )?;
                vectors += 1;
            }
            Ok((scalars, vectors))
        })
        .collect();
    let mut scalars = 0;
    let mut vectors = 0;
    for r in per_prime {
        let (s, v) = r?;
        scalars += s;
        vectors += v;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:.2?}, limit 10s")
    })?;
    Ok(format!(
        "{scalars} scalar pairs and {vectors} vector triples over p in {PRIMES:?} ({elapsed:.2?})"
    ))
}

/// `±(a·p^k)/(b·p^l)` with `a`, `b` up to 10⁶, so valuations reach ±6.
fn wide_rational<R: Rng>(p: u64, rng: &mut R) -> Rational {
    if rng.gen_ratio(1, 20) {
        return Rational::zero();
    }
    let pk = |rng: &mut R| BigInt::from(p).pow(rng.gen_range(0..=6u32));
    let a = BigInt::from(rng.gen_range(1..=1_000_000i64)) * pk(rng);
    let b = BigInt::from(rng.gen_range(1..=1_000_000i64)) * pk(rng);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    Rational::new(a * sign, b)
}

// 2 ────────────────────────────────────────────────────────────────────────

fn criterion_parseval() -> Verdict {
    let start = Instant::now();
    let instances = 1_000u64;
    let checks: usize = (0..instances)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 8;
            let (tau, _) = random_onb_pair(&pr, n, i).map_err(|e| e.to_string())?;
            let mut rng = rng_for(0xB2 ^ i);
            for _ in 0..10 {
                let x = test_vector(&pr, n, &mut rng);
                let y = random_vector(&pr, n, &mut rng);
                let coeffs = tau.fourier_coefficients(&x).unwrap();
                ensure(tau.synthesize(&coeffs).unwrap() == x, || {
                    format!("seed {i}: Fourier round trip")
                })?;
                ensure(tau.parseval_norm(&x).unwrap() == x.sup_norm(), || {
                    format!("seed {i}: norm Parseval")
                })?;
                ensure(
                    tau.parseval_inner_product(&x, &y).unwrap() == x.inner_product(&y).unwrap(),
                    || format!("seed {i}: inner-product Parseval"),
                )?;
                let a = random_coefficients(&pr, n, &mut rng);
                let max_a = a.iter().map(|c| padic_abs(c, &pr)).max().unwrap();
                ensure(tau.synthesize(&a).unwrap().sup_norm() == max_a, || {
                    format!("seed {i}: ||sum a_j tau_j|| != max |a_j|")
                })?;
            }
            Ok(10)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:.2?}, limit 60s")
    })?;
    Ok(format!(
        "{instances} bases, {checks} vectors, dims 1-8 ({elapsed:.2?})"
    ))
}

// 3 ────────────────────────────────────────────────────────────────────────

fn criterion_characterization() -> Verdict {
    let instances = 1_000u64;
    (0..instances)
        .into_par_iter()
        .try_for_each(|i| -> Result<(), String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 6;
            let (tau, omega) = random_onb_pair(&pr, n, 0xC3_0000 + i).map_err(|e| e.to_string())?;
            let v = change_of_basis(&tau, &omega).unwrap();
            ensure(v.is_unitary(), || {
                format!("seed {i}: change of basis is not unitary")
            })?;
            let image = apply_unitary_to_onb(&v, &tau).map_err(|e| format!("seed {i}: {e}"))?;
            ensure(image.vectors() == omega.vectors(), || {
                format!("seed {i}: V tau != omega")
            })?;
            let w = random_unitary(&pr, n, i).unwrap();
            apply_unitary_to_onb(&w, &omega)
                .map_err(|e| format!("seed {i}: image basis invalid: {e}"))?;
            Ok(())
        })?;
    Ok(format!(
        "{instances} basis pairs: V unitary, V tau = omega exactly"
    ))
}

// 4 ────────────────────────────────────────────────────────────────────────

fn criterion_pvp() -> Verdict {
    let instances = 120u64;
    let pairs: usize = (0..instances)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize) % 6;
            let (tau, omega) = random_onb_pair(&pr, n, 0xD4_0000 + i).map_err(|e| e.to_string())?;
            let table = pnvpm_table(&tau, &omega).unwrap();
            let mut rng = rng_for(0xD4 ^ i);
            let mut count = 0;
            for m_mask in 0..1u64 << n {
                let m = IndexSubset::from_mask(n, m_mask);
                for k_mask in 0..1u64 << n {
                    let k = IndexSubset::from_mask(n, k_mask);
                    let c = coherence(&tau, &omega, &m, &k).unwrap();
                    let bound = table[k_mask as usize][m_mask as usize];
                    ensure(bound <= c, || {
                        format!("seed {i}: ||P_N V P_M|| > coherence at M={m}, N={k}")
                    })?;
                    if rng.gen_ratio(1, 64) {
                        ensure(pnvpm_norm(&tau, &omega, &m, &k).unwrap() == bound, || {
                            format!("seed {i}: table disagrees with direct product at M={m}, N={k}")
                        })?;
                    }
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "{instances} instances, dims 1-6, {pairs} (M, N) pairs enumerated"
    ))
}

// 5 ────────────────────────────────────────────────────────────────────────

fn rotation_report() -> UncertaintyReport {
    let p = prime(7);
    let tau = OrthonormalBasis::standard(p.clone(), 2);
    let omega = OrthonormalBasis::validate(
        p.clone(),
        vec![
            PVector::new(p.clone(), vec![ratio(24, 25), ratio(-7, 25)]).unwrap(),
            PVector::new(p.clone(), vec![ratio(7, 25), ratio(24, 25)]).unwrap(),
        ],
    )
    .unwrap();
    let m = IndexSubset::from_one_based(2, &[1]).unwrap();
    let n = IndexSubset::from_one_based(2, &[2]).unwrap();
    check_uncertainty(&tau, &omega, &m, &n, &PVector::unit(p, 2, 0)).unwrap()
}

fn criterion_main_theorem() -> Verdict {
    let report = rotation_report();
    ensure(
        report.coherence == UltraNorm::Power(-1)
            && report.bound_constant == ratio(7, 6)
            && report.lhs_norm == UltraNorm::Power(0)
            && report.rhs_value == ratio(7, 6)
            && report.holds,
        || format!("rotation fixture: {report}"),
    )?;
    let instances = 700u64;
    let per_instance = 16;
    let checks: usize = (0..instances)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 6;
            let (tau, omega) = random_onb_pair(&pr, n, 0xE5_0000 + i).map_err(|e| e.to_string())?;
            let mut rng = rng_for(0xE5 ^ i);
            for _ in 0..per_instance {
                let (m, k) = admissible_pair(&tau, &omega, &mut rng);
                let x = test_vector(&pr, n, &mut rng);
                let r = check_uncertainty(&tau, &omega, &m, &k, &x).map_err(|e| e.to_string())?;
                ensure(r.holds, || {
                    format!("seed {i}: falsified at M={m}, N={k}, x={x:?}: {r}")
                })?;
                // Inequality used in the proof, for y in the range of P_M.
                let y = project(&tau, &m, &x).unwrap();
                let restricted =
                    as_rational(restricted_max(&omega, &k.complement(), &y).unwrap(), &pr);
                let factor = Rational::one() - as_rational(r.pnvpm_norm, &pr);
                ensure(
                    restricted >= factor * as_rational(y.sup_norm(), &pr),
                    || format!("seed {i}: ||y||_(N^c, omega) < (1 - ||P_N V P_M||) ||y||"),
                )?;
            }
            Ok(per_instance)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    ensure(checks >= 10_000, || format!("only {checks} checks"))?;
    Ok(format!(
        "rotation fixture exact ({report}); {checks} admissible draws hold"
    ))
}

// 6 ────────────────────────────────────────────────────────────────────────

fn criterion_corollary() -> Verdict {
    let instances = 1_000u64;
    (0..instances)
        .into_par_iter()
        .try_for_each(|i| -> Result<(), String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 6;
            let mut rng = rng_for(0xF6 ^ i);
            let (tau, omega) = random_onb_pair(&pr, n, 0xF6_0000 + i).map_err(|e| e.to_string())?;
            let (m, k) = admissible_pair(&tau, &omega, &mut rng);
            ensure(
                support_annihilation_check(&tau, &omega, &m, &k).unwrap(),
                || format!("seed {i}: nonzero x supported on M={m}, N={k}"),
            )?;
            let (s1, s2) = random_system_pair(&pr, n, 0xF6_0000 + i).map_err(|e| e.to_string())?;
            let (m, k) = banach_admissible_pair(&s1, &s2, &mut rng);
            ensure(
                banach_support_annihilation(&s1, &s2, &m, &k).unwrap(),
                || format!("seed {i}: nonzero x supported on M={m}, N={k} (biorthogonal)"),
            )?;
            Ok(())
        })?;
    Ok(format!(
        "{instances} Hilbert and {instances} biorthogonal instances annihilate"
    ))
}

fn banach_admissible_pair<R: Rng>(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    rng: &mut R,
) -> (IndexSubset, IndexSubset) {
    let n = s1.dim();
    for _ in 0..16 {
        let m = random_subset(n, rng);
        let k = random_subset(n, rng);
        if nonarch_coherence(s1, s2, &m, &k).unwrap() < UltraNorm::ONE {
            return (m, k);
        }
    }
    (IndexSubset::empty(n), IndexSubset::empty(n))
}

// 7 ────────────────────────────────────────────────────────────────────────

fn triangular_system() -> BiorthogonalSystem {
    let p = prime(7);
    let t = PMatrix::from_rows(
        p.clone(),
        vec![
            vec![ratio(1, 1), ratio(0, 1)],
            vec![ratio(7, 1), ratio(1, 1)],
        ],
    )
    .unwrap();
    let f = t.inverse().unwrap();
    BiorthogonalSystem::validate(t, f).unwrap()
}

fn check_banach_instance<R: Rng>(
    label: &str,
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    rng: &mut R,
) -> Result<(), String> {
    let pr = s1.prime().clone();
    let n = s1.dim();
    for s in [s1, s2] {
        BiorthogonalSystem::validate(s.basis_matrix().clone(), s.functional_matrix().clone())
            .map_err(|e| format!("{label}: revalidation failed: {e}"))?;
    }
    for _ in 0..3 {
        // Functional norm against the max entry in canonical coordinates.
        let phi = random_vector(&pr, n, rng);
        ensure(s1.functional_norm(&phi).unwrap() == phi.sup_norm(), || {
            format!("{label}: ||phi|| != max |phi_i|")
        })?;
        // Both expansions reconstruct exactly.
        let x = test_vector(&pr, n, rng);
        ensure(
            s1.synthesize(&s1.coefficients(&x).unwrap()).unwrap() == x,
            || format!("{label}: x != sum f_j(x) tau_j"),
        )?;
        ensure(
            s1.synthesize_functional(&s1.functional_on_basis(&phi).unwrap())
                .unwrap()
                == phi,
            || format!("{label}: phi != sum phi(tau_j) f_j"),
        )?;

        let (m, k) = banach_admissible_pair(s1, s2, rng);
        let r =
            check_nonarch_uncertainty(s1, s2, &m, &k, &x).map_err(|e| format!("{label}: {e}"))?;
        ensure(r.holds, || {
            format!("{label}: falsified at M={m}, N={k}: {r}")
        })?;
        let c = nonarch_coherence(s1, s2, &m, &k).unwrap();
        let bound = nonarch_pnvpm_norm(s1, s2, &m, &k).unwrap();
        ensure(bound <= c, || {
            format!("{label}: ||P_N V P_M|| > coherence at M={m}, N={k}")
        })?;
        let y = s1.projection_matrix(&m).unwrap().matvec(&x).unwrap();
        let restricted = as_rational(s2.restricted_max(&k.complement(), &y).unwrap(), &pr);
        ensure(
            restricted
                >= (Rational::one() - as_rational(bound, &pr)) * as_rational(y.sup_norm(), &pr),
            || format!("{label}: ||y||_(N^c, g) < (1 - ||P_N V P_M||) ||y||"),
        )?;

        match check_nonarch_uncertainty_swapped(s1, s2, &m, &k, &x) {
            Ok(swapped) => {
                ensure(swapped.holds, || {
                    format!("{label}: interchanged form falsified: {swapped}")
                })?;
                let plain = check_nonarch_uncertainty(s2, s1, &m, &k, &x).unwrap();
                ensure(swapped == plain, || {
                    format!("{label}: interchanged form differs from roles swapped")
                })?;
            }
            Err(Error::HypothesisViolated { .. }) => {}
            Err(e) => return Err(format!("{label}: {e}")),
        }
    }
    Ok(())
}

fn criterion_banach() -> Verdict {
    let mut rng = rng_for(0x77);
    let canonical = BiorthogonalSystem::canonical(prime(7), 2);
    let triangular = triangular_system();
    ensure(!triangular.is_inner_product_induced(), || {
        "triangular fixture is induced".into()
    })?;
    check_banach_instance("triangular fixture", &triangular, &canonical, &mut rng)?;
    check_banach_instance(
        "triangular fixture (reversed)",
        &canonical,
        &triangular,
        &mut rng,
    )?;

    let instances = 1_000u64;
    let non_induced: usize = (0..instances)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 6;
            let (s1, s2) = random_system_pair(&pr, n, 0x7_0000 + i).map_err(|e| e.to_string())?;
            let mut rng = rng_for(0x77 ^ i);
            check_banach_instance(&format!("seed {i}"), &s1, &s2, &mut rng)?;
            Ok(usize::from(
                !s1.is_inner_product_induced() || !s2.is_inner_product_induced(),
            ))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    ensure(non_induced >= 100, || {
        format!("only {non_induced} non-induced instances")
    })?;
    Ok(format!(
        "{} instances ({} not induced by an inner product) incl. the triangular fixture",
        instances + 2,
        non_induced + 2
    ))
}

// 8 ────────────────────────────────────────────────────────────────────────

fn criterion_reduction() -> Verdict {
    let instances = 500u64;
    let compared: usize = (0..instances)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 6;
            let (tau, omega) = random_onb_pair(&pr, n, 0x8_0000 + i).map_err(|e| e.to_string())?;
            let (s1, s2) = (
                BiorthogonalSystem::from_onb(&tau),
                BiorthogonalSystem::from_onb(&omega),
            );
            let mut rng = rng_for(0x88 ^ i);
            let mut count = 0;
            for _ in 0..4 {
                let m = random_subset(n, &mut rng);
                let k = random_subset(n, &mut rng);
                let x = test_vector(&pr, n, &mut rng);
                let hilbert = check_uncertainty(&tau, &omega, &m, &k, &x);
                let banach = check_nonarch_uncertainty(&s1, &s2, &m, &k, &x);
                ensure(hilbert == banach, || {
                    format!("seed {i}: M={m}, N={k}: {hilbert:?} vs {banach:?}")
                })?;
                count += 1;
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "{instances} induced instances, {compared} reports identical"
    ))
}

// 9 ────────────────────────────────────────────────────────────────────────

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_padic-gj")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn criterion_cli() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let seeds = 100u64;
    (0..seeds)
        .into_par_iter()
        .try_for_each(|seed| -> Result<(), String> {
            let p = PRIMES[seed as usize % PRIMES.len()].to_string();
            let dim = (1 + seed % 5).to_string();
            let kind = if seed % 2 == 0 { "hilbert" } else { "banach" };
            let args = [
                "generate",
                "--prime",
                &p,
                "--dim",
                &dim,
                "--seed",
                &seed.to_string(),
                "--kind",
                kind,
            ];
            let first = cli(&args);
            ensure(exit_code(&first) == 0, || {
                format!("generate seed {seed} failed")
            })?;
            ensure(cli(&args).stdout == first.stdout, || {
                format!("generate seed {seed} is not deterministic")
            })?;
            let path = dir.path().join(format!("seed{seed}.json"));
            std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
            let path = path.to_str().unwrap();
            let validated = cli(&["validate", path]);
            ensure(exit_code(&validated) == 0, || {
                format!("seed {seed}: validate exited {}", exit_code(&validated))
            })?;
            let checked = cli(&["check", path]);
            ensure(exit_code(&checked) == 0, || {
                format!("seed {seed}: check exited {}", exit_code(&checked))
            })?;
            Ok(())
        })?;

    let expectations: [(&str, &str, i32); 5] = [
        ("check", "rotation.json", 0),
        ("check", "hypothesis_violated.json", 4),
        ("check", "malformed.json", 3),
        ("validate", "norm_violation.json", 2),
        ("check", "banach_triangular.json", 0),
    ];
    for (cmd, name, expected) in expectations {
        let out = cli(&[cmd, fixture(name).to_str().unwrap()]);
        ensure(exit_code(&out) == expected, || {
            format!(
                "{cmd} {name}: exit {} (expected {expected})",
                exit_code(&out)
            )
        })?;
    }
    let rotation =
        String::from_utf8(cli(&["check", fixture("rotation.json").to_str().unwrap()]).stdout)
            .unwrap();
    ensure(
        rotation.contains("coherence=7^-1 constant=7/6 lhs=7^0 rhs=7/6 holds=true"),
        || format!("rotation report: {rotation}"),
    )?;
    let malformed =
        String::from_utf8(cli(&["check", fixture("malformed.json").to_str().unwrap()]).stderr)
            .unwrap();
    ensure(malformed.contains("omega[1][1]"), || {
        format!("malformed error lacks location: {malformed}")
    })?;
    ensure(
        exit_code(&cli(&[
            "generate", "--prime", "6", "--dim", "2", "--seed", "1",
        ])) == 3,
        || "--prime 6 accepted".into(),
    )?;

    let sweep_args = [
        "sweep", "--primes", "2,5,7", "--dims", "1,2,3", "--seeds", "0..4",
    ];
    let a = cli(&sweep_args);
    let b = cli(&sweep_args);
    ensure(exit_code(&a) == 0, || {
        format!("sweep exited {}", exit_code(&a))
    })?;
    ensure(a.stdout == b.stdout, || {
        "sweep output differs between runs".into()
    })?;
    let mut reader = csv::Reader::from_reader(a.stdout.as_slice());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    let holds = header.iter().position(|h| h == "holds").unwrap();
    let mut rows = 0;
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        ensure(&record[holds] == "true", || {
            format!("sweep row fails: {record:?}")
        })?;
        rows += 1;
    }
    Ok(format!(
        "{seeds} generate/validate/check round trips, fixture exit codes, sweep of {rows} rows byte-identical"
    ))
}

// 10 ───────────────────────────────────────────────────────────────────────

fn criterion_entropy() -> Verdict {
    let p7 = prime(7);
    let x = PVector::new(p7.clone(), vec![ratio(1, 1), ratio(7, 1)]).unwrap();
    let value = padic_shannon_entropy(&OrthonormalBasis::standard(p7.clone(), 2), &x).unwrap();
    let expected = 2.0 * 7f64.ln() / 49.0;
    ensure(((value - expected) / expected).abs() < 1e-12, || {
        format!("fixture entropy {value}, expected {expected}")
    })?;

    let instances = 500u64;
    let evaluated: usize = (0..instances)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let pr = prime(PRIMES[i as usize % PRIMES.len()]);
            let n = 1 + (i as usize / PRIMES.len()) % 6;
            let (tau, _) = random_onb_pair(&pr, n, 0xA_0000 + i).map_err(|e| e.to_string())?;
            let mut rng = rng_for(0xAA ^ i);
            let mut count = 0;
            for draw in 0..10 {
                // Half the draws use unit coefficients, so every valuation is 0.
                let x = if draw % 2 == 0 {
                    let mut coeffs = random_coefficients(&pr, n, &mut rng);
                    let top = coeffs.choose_mut(&mut rng).unwrap();
                    if top.is_zero() {
                        *top = Rational::one();
                    }
                    let norm = coeffs.iter().map(|c| padic_abs(c, &pr)).max().unwrap();
                    let scale = as_rational(norm, &pr);
                    let scaled: Vec<Rational> = coeffs.iter().map(|c| c * &scale).collect();
                    tau.synthesize(&scaled).unwrap()
                } else {
                    let units: Vec<Rational> = (0..n)
                        .map(|_| ratio(rng.gen_range(1..pr.get() as i64), 1))
                        .collect();
                    tau.synthesize(&units).unwrap()
                };
                let coeffs = tau.fourier_coefficients(&x).unwrap();
                match padic_shannon_entropy(&tau, &x) {
                    Ok(h) => {
                        let all_units = coeffs
                            .iter()
                            .all(|c| oracle_valuation(c, pr.get()) == Some(0));
                        ensure(h >= 0.0, || format!("seed {i}: negative entropy {h}"))?;
                        ensure((h == 0.0) == all_units, || {
                            format!("seed {i}: entropy {h}, unit coefficients {all_units}")
                        })?;
                        count += 1;
                    }
                    Err(Error::Membership(_)) => {
                        let outside =
                            x.sup_norm() != UltraNorm::ONE || coeffs.iter().any(Zero::is_zero);
                        ensure(outside, || format!("seed {i}: admissible vector rejected"))?;
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    ensure(evaluated >= 1_000, || {
        format!("only {evaluated} entropies evaluated")
    })?;
    Ok(format!("fixture 2 ln 7 / 49 = {value:.15}; {evaluated} entropies, all nonnegative, zero iff unit coefficients"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axioms of the valuation, norm and form", criterion_axioms),
        ("Parseval identities", criterion_parseval),
        ("characterization by unitaries", criterion_characterization),
        ("bound ||P_N V P_M|| <= coherence", criterion_pvp),
        ("uncertainty inequality", criterion_main_theorem),
        ("support annihilation", criterion_corollary),
        ("biorthogonal systems", criterion_banach),
        ("reduction to the Hilbert case", criterion_reduction),
        ("command-line contract", criterion_cli),
        ("entropy diagnostic", criterion_entropy),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        match verdict {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {detail} [{elapsed:.2?}]",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
