//! Seeded verification sweeps. Every sweep is a pure function of its
//! configuration: equal inputs give equal reports in equal order.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::chebyshev::{closed_form_suite, conjecture_rows, default_a_grid, default_b_grid, theorem_grid, SuiteRow};
use crate::identity::{
    condensation_check, jacobi_check, shifted_hankel_difference_check, shifted_hankel_product_check, uvarov_system,
    verify_confluent, verify_identity, ConfluentInstance, IdentityInstance, UvarovReport,
};
use crate::moments::MomentFunctional;
use crate::orthopoly::{bordered_hankel_poly, linear_hankel_poly, OrthoSystem};
use crate::random::{self, SweepRng};
use crate::report::VerificationReport;
use crate::ring::{det_berkowitz, det_cofactor, det_field, sign, Monomial, Ring, Scalar, MAX_VARS};

/// Reports of one sweep, in instance order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Sweep {
    pub name: String,
    pub reports: Vec<VerificationReport>,
}

impl Sweep {
    fn new(name: &str) -> Self {
        Sweep { name: name.to_string(), reports: vec![] }
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.passed())
    }

    pub fn first_failure(&self) -> Option<&VerificationReport> {
        self.failures().next()
    }

    /// Counts per identity name, `(name, total, passed)`, sorted by name.
    pub fn tally(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for r in &self.reports {
            match out.iter_mut().find(|(n, _, _)| *n == r.identity) {
                Some(e) => {
                    e.1 += 1;
                    e.2 += r.passed() as usize;
                }
                None => out.push((r.identity.clone(), 1, r.passed() as usize)),
            }
        }
        out.sort();
        out
    }

    pub fn extend(&mut self, other: Sweep) {
        self.reports.extend(other.reports);
    }
}

/// Bounds shared by the identity sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: usize,
    pub max_k: usize,
    pub max_m: usize,
}

fn atom_nodes<K: Scalar>(f: &MomentFunctional<K>) -> Vec<K> {
    f.atoms().map(|a| a.iter().map(|(u, _)| u.clone()).collect()).unwrap_or_default()
}

/// The identity at rational parameters over `trials` random finite-atom
/// functionals with `atoms` nodes, for every `n <= max_n`, `k <= max_k`,
/// `m <= max_m`. The `x`s and `y`s are pairwise distinct and avoid the nodes.
pub fn identity_sweep<K: Scalar>(seed: u64, trials: usize, atoms: usize, b: Bounds) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("identity");
    let depth = (b.max_n + b.max_m).saturating_sub(1).min(atoms);
    for trial in 0..trials {
        let f = random::atom_functional::<K>(&mut rng, atoms);
        let nodes = atom_nodes(&f);
        let sys = match OrthoSystem::build(f, depth) {
            Ok(s) => s,
            Err(e) => {
                sweep.reports.push(VerificationReport::new("identity").param("trial", trial).failed(e));
                continue;
            }
        };
        for n in 0..=b.max_n {
            for k in 0..=b.max_k {
                for m in 0..=b.max_m {
                    let mut ps = random::params(&mut rng, m + k, &nodes);
                    let ys = ps.split_off(m);
                    let rep = verify_identity(&sys, &IdentityInstance::exact(n, ps, ys));
                    sweep.reports.push(rep.param("trial", trial));
                }
            }
        }
    }
    sweep
}

/// Moments available to the formal sweeps; enough for truncation 25 with
/// room for the internal retries.
const SEQUENCE_LEN: usize = 96;

/// The identity with formal `y`s over `trials` random moment sequences,
/// compared below total degree `truncation` in the inverse variables.
pub fn series_sweep<K: Scalar>(seed: u64, trials: usize, b: Bounds, truncation: u32) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("identity-series");
    let depth = (b.max_n + b.max_m).saturating_sub(1);
    let len = SEQUENCE_LEN.max(2 * (b.max_n + b.max_m) + truncation as usize + 8);
    for trial in 0..trials {
        let f = random::sequence_functional::<K>(&mut rng, len, depth + 1);
        let sys = match OrthoSystem::build(f, depth) {
            Ok(s) => s,
            Err(e) => {
                sweep.reports.push(VerificationReport::new("identity-series").param("trial", trial).failed(e));
                continue;
            }
        };
        for n in 0..=b.max_n {
            for k in 1..=b.max_k.min(MAX_VARS) {
                for m in 0..=b.max_m {
                    let xs = random::params(&mut rng, m, &[]);
                    let rep = verify_identity(&sys, &IdentityInstance::formal(n, xs, k, truncation));
                    sweep.reports.push(rep.param("trial", trial));
                }
            }
        }
    }
    sweep
}

/// Parameter shapes with at most one doubled `x` and at most one doubled `y`.
fn confluent_shapes<K: Scalar>(rng: &mut SweepRng, n: usize, nodes: &[K]) -> Vec<ConfluentInstance<K>> {
    let shapes: [(&[usize], &[usize]); 5] = [(&[2], &[]), (&[], &[2]), (&[2], &[2]), (&[2, 1], &[1]), (&[1], &[2, 1])];
    shapes
        .iter()
        .map(|(xm, ym)| {
            let mut ps = random::params(rng, xm.len() + ym.len(), nodes);
            let ys = ps.split_off(xm.len());
            ConfluentInstance {
                n,
                xis: ps.into_iter().zip(xm.iter().copied()).collect(),
                omegas: ys.into_iter().zip(ym.iter().copied()).collect(),
            }
        })
        .collect()
}

/// Repeated parameters (multiplicity at most 2) for `n <= max_n` over
/// `trials` random finite-atom functionals.
pub fn confluent_sweep<K: Scalar>(seed: u64, trials: usize, atoms: usize, max_n: usize) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("confluent");
    for trial in 0..trials {
        let f = random::atom_functional::<K>(&mut rng, atoms);
        let nodes = atom_nodes(&f);
        let sys = match OrthoSystem::build(f, (max_n + 2).min(atoms)) {
            Ok(s) => s,
            Err(e) => {
                sweep.reports.push(VerificationReport::new("confluent").param("trial", trial).failed(e));
                continue;
            }
        };
        for n in 0..=max_n {
            for inst in confluent_shapes(&mut rng, n, &nodes) {
                sweep.reports.push(verify_confluent(&sys, &inst).param("trial", trial));
            }
        }
    }
    sweep
}

/// Both shifted-Hankel relations for `1 <= n <= max_n` on `trials` random
/// integer sequences with entries in `[-9, 9]`.
pub fn lemma_sweep<K: Scalar>(seed: u64, trials: usize, max_n: usize) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("shifted-hankel");
    for trial in 0..trials {
        let c = random::integers::<K>(&mut rng, 2 * max_n + 1, 9);
        for n in 1..=max_n {
            sweep.reports.push(shifted_hankel_difference_check(&c, n).param("trial", trial));
            sweep.reports.push(shifted_hankel_product_check(&c, n).param("trial", trial));
        }
    }
    sweep
}

/// Jacobi's identity for every pair of rows and pair of columns of one
/// random matrix per entry of `sizes`.
pub fn jacobi_sweep<K: Scalar>(seed: u64, sizes: &[usize]) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("jacobi");
    for &size in sizes {
        let a = random::matrix::<K>(&mut rng, size);
        for i1 in 1..=size {
            for i2 in i1 + 1..=size {
                for j1 in 1..=size {
                    for j2 in j1 + 1..=size {
                        sweep.reports.push(jacobi_check(&a, i1, i2, j1, j2));
                    }
                }
            }
        }
    }
    sweep
}

/// The five-term relation between theorem determinants for
/// `1 <= n, k, m <= 2` over `trials` random finite-atom functionals.
pub fn condensation_sweep<K: Scalar>(seed: u64, trials: usize, atoms: usize) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("condensation");
    for trial in 0..trials {
        let f = random::atom_functional::<K>(&mut rng, atoms);
        let nodes = atom_nodes(&f);
        let sys = match OrthoSystem::build(f, 5.min(atoms)) {
            Ok(s) => s,
            Err(e) => {
                sweep.reports.push(VerificationReport::new("condensation").param("trial", trial).failed(e));
                continue;
            }
        };
        for n in 1..=2 {
            for k in 1..=2 {
                for m in 1..=2 {
                    let mut ps = random::params(&mut rng, m + k, &nodes);
                    let ys = ps.split_off(m);
                    sweep.reports.push(condensation_check(&sys, n, &ps, &ys).param("trial", trial));
                }
            }
        }
    }
    sweep
}

fn compare<K: Scalar>(name: &str, n: usize, lhs: crate::Result<K>, rhs: crate::Result<K>) -> VerificationReport {
    let rep = VerificationReport::new(name).param("n", n);
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let eq = l == r;
            rep.sides(l, r, eq)
        }
        (Err(e), _) | (_, Err(e)) => rep.failed(e),
    }
}

fn compare_display<T: PartialEq + std::fmt::Display>(name: &str, n: usize, lhs: crate::Result<T>, rhs: crate::Result<T>) -> VerificationReport {
    let rep = VerificationReport::new(name).param("n", n);
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let eq = l == r;
            rep.sides(l, r, eq)
        }
        (Err(e), _) | (_, Err(e)) => rep.failed(e),
    }
}

/// Structural facts about one orthogonal system, `0 <= n <= max_n`:
///
/// - `H(n) = mu_0^n prod_{i<n} t_i^{n-i-1}`
/// - the bordered-Hankel polynomial and `(-1)^n / H(n)` times the linear
///   Hankel polynomial both equal `p_n`
/// - `q_n` as a series in `1/y` has no terms `y^{-1}, ..., y^{-n}` and
///   leading coefficient `H(n+1) / H(n)`
/// - `q_n` satisfies the three-term recurrence at a rational `y`
///
/// Needs `H(0..=max_n+1)` nonzero.
pub fn internals_check<K: Scalar>(sys: &OrthoSystem<K>, y: &K, max_n: usize) -> Vec<VerificationReport> {
    let f = sys.functional();
    let mut out = Vec::new();
    let mu0 = f.moment(0);
    for n in 0..=max_n {
        let product = mu0.clone().map(|m0| {
            let t = sys.t();
            (0..n.saturating_sub(1)).fold(Ring::pow(&m0, n as u32), |acc, i| acc * &Ring::pow(&t[i], (n - i - 1) as u32))
        });
        out.push(compare("hankel-product", n, f.hankel_det(n), product));

        let p = sys.p(n).cloned();
        out.push(compare_display("bordered-hankel", n, bordered_hankel_poly(f, n), p.clone()));
        let linear = linear_hankel_poly(f, n)
            .and_then(|l| Ok(l.scale(&(sign::<K>(n) / &f.hankel_det(n)?))));
        out.push(compare_display("linear-hankel", n, linear, p));

        let lead = n as u32 + 1;
        let rep = match sys.q_series(n, 0, lead + 1) {
            Ok(s) => {
                let coeff = |e: u32| {
                    let mut mono: Monomial = [0; MAX_VARS];
                    mono[0] = e as u16;
                    s.coeff(&mono)
                };
                let vanishing = (1..lead).all(|e| coeff(e).is_zero());
                let expected = f.hankel_det(n + 1).and_then(|h1| Ok(h1 / &f.hankel_det(n)?));
                let mut rep = compare("q-leading", n, Ok(coeff(lead)), expected);
                if !vanishing {
                    rep.equal = false;
                    rep.first_difference = Some(format!("nonzero terms below y^-{lead}: {s}"));
                }
                rep
            }
            Err(e) => VerificationReport::new("q-leading").param("n", n).failed(e),
        };
        out.push(rep);

        if n >= 1 {
            let s = &sys.s()[n - 1];
            let rhs = (|| {
                let prev = sys.q_exact(n - 1, y)?;
                let tail = if n == 1 { f.moment(0)? } else { sys.t()[n - 2].clone() * &sys.q_exact(n - 2, y)? };
                Ok((y.clone() - s) * &prev - &tail)
            })();
            out.push(compare("q-recurrence", n, sys.q_exact(n, y), rhs).param("y", y));
        }
    }
    out
}

/// [`internals_check`] over `trials` random finite-atom functionals with
/// `max_n + 2` nodes.
pub fn internals_sweep<K: Scalar>(seed: u64, trials: usize, max_n: usize) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("internals");
    for trial in 0..trials {
        let f = random::atom_functional::<K>(&mut rng, max_n + 2);
        let nodes = atom_nodes(&f);
        let y = random::params(&mut rng, 1, &nodes).remove(0);
        match OrthoSystem::build(f, max_n) {
            Ok(sys) => sweep
                .reports
                .extend(internals_check(&sys, &y, max_n).into_iter().map(|r| r.param("trial", trial))),
            Err(e) => sweep.reports.push(VerificationReport::new("internals").param("trial", trial).failed(e)),
        }
    }
    sweep
}

/// One Uvarov run: the modification with `ys` and fixed zeros `xs_fixed`.
#[derive(Clone, Debug)]
pub struct UvarovRun<K> {
    pub trial: usize,
    pub xs_fixed: Vec<K>,
    pub ys: Vec<K>,
    pub result: crate::Result<UvarovReport<K>>,
}

impl<K: Scalar> UvarovRun<K> {
    pub fn passed(&self) -> bool {
        self.result.as_ref().is_ok_and(UvarovReport::passed)
    }
}

/// `P_0, ..., P_max_n` for `k = 1` and `k = 2` pole modifications (no fixed
/// zeros) of `trials` random finite-atom functionals.
pub fn uvarov_sweep<K: Scalar>(seed: u64, trials: usize, atoms: usize, max_n: usize) -> Vec<UvarovRun<K>> {
    let mut rng = random::rng(seed);
    let mut out = Vec::new();
    for trial in 0..trials {
        let f: Arc<MomentFunctional<K>> = random::atom_functional(&mut rng, atoms);
        let nodes = atom_nodes(&f);
        let sys = OrthoSystem::build(f, max_n.min(atoms));
        for k in 1..=2 {
            let ys = random::params(&mut rng, k, &nodes);
            let result = sys.as_ref().map_err(Clone::clone).and_then(|s| uvarov_system(s, max_n, &[], &ys));
            out.push(UvarovRun { trial, xs_fixed: vec![], ys, result });
        }
    }
    out
}

/// Berkowitz, Bareiss and cofactor expansion on `count` random matrices of
/// sizes cycling through `1..=max_size`.
pub fn determinant_sweep<K: Scalar>(seed: u64, count: usize, max_size: usize) -> Sweep {
    let mut rng = random::rng(seed);
    let mut sweep = Sweep::new("determinant");
    for i in 0..count {
        let size = 1 + (i + rng.gen_range(0..max_size)) % max_size;
        let a = random::matrix::<K>(&mut rng, size);
        let rep = VerificationReport::new("determinant").param("index", i).param("size", size);
        let rep = match (det_berkowitz(&a), det_field(&a), det_cofactor(&a)) {
            (Ok(b), Ok(f), Ok(c)) => {
                let eq = b == f && f == c;
                let mut rep = rep.sides(&b, &f, eq);
                if !eq {
                    rep.first_difference = Some(format!("berkowitz {b}, bareiss {f}, cofactor {c}"));
                }
                rep
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.failed(e),
        };
        sweep.reports.push(rep);
    }
    sweep
}

/// The Chebyshev table: single-pole and pole-zero evaluations for
/// `n <= max_theorem_n` on the default grids, then closed forms and
/// conjecture rows for `n <= max_closed_n`.
pub fn chebyshev_table<K: Scalar>(max_theorem_n: usize, max_closed_n: usize) -> Vec<SuiteRow> {
    let mut rows = theorem_grid::<K>(max_theorem_n, &default_a_grid(), &default_b_grid());
    for n in 1..=max_closed_n {
        rows.extend(closed_form_suite::<K>(n));
    }
    for n in 1..=max_closed_n {
        rows.extend(conjecture_rows::<K>(n));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn small_sweeps_pass() {
        let b = Bounds { max_n: 3, max_k: 2, max_m: 2 };
        assert!(identity_sweep::<Rational>(1, 2, 6, b).passed());
        let b = Bounds { max_n: 2, max_k: 2, max_m: 1 };
        let s = series_sweep::<Rational>(1, 1, b, 8);
        assert!(s.passed(), "{:?}", s.first_failure());
        assert!(confluent_sweep::<Rational>(1, 1, 6, 2).passed());
        assert!(lemma_sweep::<Rational>(1, 2, 3).passed());
        assert_eq!(jacobi_sweep::<Rational>(1, &[3]).len(), 9);
        assert!(condensation_sweep::<Rational>(1, 1, 6).passed());
        let s = internals_sweep::<Rational>(1, 2, 4);
        assert!(s.passed(), "{:?}", s.first_failure());
        assert!(uvarov_sweep::<Rational>(1, 1, 6, 3).iter().all(UvarovRun::passed));
        assert!(determinant_sweep::<Rational>(1, 30, 4).passed());
    }

    #[test]
    fn deterministic() {
        let b = Bounds { max_n: 2, max_k: 1, max_m: 1 };
        let a = serde_json::to_string(&identity_sweep::<Rational>(9, 2, 5, b)).unwrap();
        let c = serde_json::to_string(&identity_sweep::<Rational>(9, 2, 5, b)).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn tally_groups() {
        let s = lemma_sweep::<Rational>(3, 1, 2);
        assert_eq!(
            s.tally(),
            vec![("shifted-hankel-difference".to_string(), 2, 2), ("shifted-hankel-product".to_string(), 2, 2)]
        );
    }
}
