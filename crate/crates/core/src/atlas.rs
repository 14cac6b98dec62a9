//! Sweeps of the eigenphase torus `(θ₊, θ₋)`, spectral fingerprints and the
//! identification `(θ₊, θ₋) ≡ (θ₋, θ₊)` that folds the torus into a Möbius
//! strip whose boundary is the self-dual diagonal.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boxspec::{box_lowest_tagged, merge_levels, BoxConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::u2core::PointInteraction;

/// Number of levels that make up a fingerprint unless configured otherwise.
pub const DEFAULT_LEVELS: usize = 12;

/// Energy quantum used when rounding fingerprint levels.
pub const FINGERPRINT_QUANTUM: f64 = 1e-8;

/// The first `N` box energies at one torus node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint<T> {
    /// Grid indices `(i, j)` sorted so that `i ≥ j`.
    pub key: (usize, usize),
    /// Energies repeated by multiplicity, rounded to [`FINGERPRINT_QUANTUM`].
    pub levels: Vec<T>,
    /// Multiplicity of the level each energy belongs to.
    pub multiplicities: Vec<usize>,
}

impl<T: Real> Fingerprint<T> {
    /// Equal within `tol` level by level.
    pub fn matches(&self, other: &Self, tol: T) -> bool {
        self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| (*a - *b).abs() <= tol)
    }

    /// Every listed level is doubly degenerate. A pair cut by the truncation
    /// at `N` levels is allowed as the last entry.
    pub fn all_double(&self) -> bool {
        match self.multiplicities.split_last() {
            Some((_, rest)) => !rest.is_empty() && rest.iter().all(|&m| m == 2),
            None => false,
        }
    }
}

fn round_to<T: Real>(x: T, q: T) -> T {
    (x / q).round() * q
}

/// Fingerprint of `p` (only `θ±` matter).
pub fn fingerprint<T: Real>(
    p: &PointInteraction<T>,
    bx: &BoxConfig<T>,
    n_levels: usize,
    key: (usize, usize),
) -> Result<Fingerprint<T>> {
    let tagged = box_lowest_tagged(p, bx, n_levels)?;
    let spec = merge_levels(tagged.clone(), bx.merge_tol());
    let q = T::lit(FINGERPRINT_QUANTUM);
    let mut multiplicities = Vec::with_capacity(n_levels);
    for l in &spec.levels {
        for _ in 0..l.multiplicity {
            multiplicities.push(l.multiplicity);
        }
    }
    Ok(Fingerprint {
        key: (key.0.max(key.1), key.0.min(key.1)),
        levels: spec.energies().into_iter().map(|e| round_to(e, q)).collect(),
        multiplicities,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapNode<T> {
    pub i: usize,
    pub j: usize,
    pub theta_plus: T,
    pub theta_minus: T,
    pub fingerprint: Fingerprint<T>,
}

/// Fingerprints on the `resolution × resolution` grid `θ = 2πi/resolution`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMap<T> {
    pub resolution: usize,
    pub n_levels: usize,
    pub box_config: BoxConfig<T>,
    /// Row-major in `(i, j)`, `i` indexing `θ₊`.
    pub nodes: Vec<MapNode<T>>,
}

impl<T: Real> SpectralMap<T> {
    pub fn node(&self, i: usize, j: usize) -> &MapNode<T> {
        &self.nodes[i * self.resolution + j]
    }

    /// `theta_plus,theta_minus,level_index,energy,multiplicity`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("theta_plus,theta_minus,level_index,energy,multiplicity\n");
        for n in &self.nodes {
            for (k, (e, m)) in n.fingerprint.levels.iter().zip(&n.fingerprint.multiplicities).enumerate() {
                let _ = writeln!(s, "{:.16e},{:.16e},{},{:.16e},{}", n.theta_plus, n.theta_minus, k, e, m);
            }
        }
        s
    }

    /// Node pairs identified by the swap, as flat indices `i·res + j`.
    pub fn gluing_pairs(&self) -> Vec<(usize, usize)> {
        let r = self.resolution;
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..i {
                out.push((i * r + j, j * r + i));
            }
        }
        out
    }

    /// `node_a,node_b`.
    pub fn gluing_csv(&self) -> String {
        let mut s = String::from("node_a,node_b\n");
        for (a, b) in self.gluing_pairs() {
            let _ = writeln!(s, "{a},{b}");
        }
        s
    }
}

/// Evaluate fingerprints at every node of the torus grid.
pub fn sweep_torus<T: Real>(resolution: usize, bx: &BoxConfig<T>, n_levels: usize) -> Result<SpectralMap<T>> {
    if resolution < 8 {
        return Err(Error::InvalidArgument(format!("resolution must be at least 8, got {resolution}")));
    }
    bx.validate()?;
    let step = T::TAU() / T::lit(resolution as f64);
    let mut nodes = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            let tp = step * T::lit(i as f64);
            let tm = step * T::lit(j as f64);
            let p = PointInteraction::new(tp, tm, T::zero(), T::zero());
            let fp = fingerprint(&p, bx, n_levels, (i, j)).map_err(|e| Error::AtNode {
                theta_plus: tp.as_f64(),
                theta_minus: tm.as_f64(),
                source: std::boxed::Box::new(e),
            })?;
            nodes.push(MapNode { i, j, theta_plus: tp, theta_minus: tm, fingerprint: fp });
        }
    }
    Ok(SpectralMap { resolution, n_levels, box_config: *bx, nodes })
}

/// Outcome of [`mobius_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobiusReport {
    /// (a) fingerprints agree under the swap at every node.
    pub swap_symmetric: bool,
    pub swap_failures: Vec<(usize, usize)>,
    /// (b) off-diagonal unordered node pairs with a fingerprint of their own.
    pub distinct_pairs: usize,
    pub off_diagonal_pairs: usize,
    pub distinct_fraction: f64,
    /// Off-diagonal pairs whose fingerprints coincide.
    pub collisions: Vec<((usize, usize), (usize, usize))>,
    /// (c) the nodes with all levels doubled are exactly the diagonal ones.
    pub boundary_is_self_dual: bool,
    pub boundary_failures: Vec<(usize, usize)>,
    pub distinct_fingerprints: usize,
    pub passed: bool,
}

/// Minimum fraction of distinct off-diagonal fingerprints for a pass.
pub const DISTINCT_FRACTION: f64 = 0.95;

/// Check the Möbius identification on a complete map.
pub fn mobius_check<T: Real>(m: &SpectralMap<T>) -> MobiusReport {
    let r = m.resolution;
    let tol = m.box_config.merge_tol();

    let mut swap_failures = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let a = &m.node(i, j).fingerprint;
            let b = &m.node(j, i).fingerprint;
            if a.key != b.key || a.levels != b.levels || a.multiplicities != b.multiplicities {
                swap_failures.push((i, j));
            }
        }
    }

    // one representative per unordered pair
    let reps: Vec<&MapNode<T>> = (0..r).flat_map(|i| (0..=i).map(move |j| (i, j))).map(|(i, j)| m.node(i, j)).collect();
    let off: Vec<&&MapNode<T>> = reps.iter().filter(|n| n.i != n.j).collect();
    let mut collisions = Vec::new();
    let mut shared = vec![false; off.len()];
    for a in 0..off.len() {
        for b in a + 1..off.len() {
            if off[a].fingerprint.matches(&off[b].fingerprint, tol) {
                collisions.push(((off[a].i, off[a].j), (off[b].i, off[b].j)));
                shared[a] = true;
                shared[b] = true;
            }
        }
    }
    let distinct_pairs = shared.iter().filter(|s| !**s).count();
    let distinct_fraction = if off.is_empty() { 1.0 } else { distinct_pairs as f64 / off.len() as f64 };

    let mut boundary_failures = Vec::new();
    for n in &m.nodes {
        if n.fingerprint.all_double() != (n.i == n.j) {
            boundary_failures.push((n.i, n.j));
        }
    }

    let mut classes: Vec<&Fingerprint<T>> = Vec::new();
    for n in &reps {
        if !classes.iter().any(|c| c.matches(&n.fingerprint, tol)) {
            classes.push(&n.fingerprint);
        }
    }

    let swap_symmetric = swap_failures.is_empty();
    let boundary_is_self_dual = boundary_failures.is_empty();
    MobiusReport {
        swap_symmetric,
        swap_failures,
        distinct_pairs,
        off_diagonal_pairs: off.len(),
        distinct_fraction,
        collisions,
        boundary_is_self_dual,
        boundary_failures,
        distinct_fingerprints: classes.len(),
        passed: swap_symmetric && boundary_is_self_dual && distinct_fraction >= DISTINCT_FRACTION,
    }
}

/// `n` points of the isospectral sphere through `p`, area-uniform in
/// `(cos μ, ν)`. A self-dual `p` has a one-point orbit and is repeated.
pub fn isospectral_orbit_sample<T: Real>(p: &PointInteraction<T>, n: usize, seed: u64) -> Vec<PointInteraction<T>> {
    if p.is_self_dual() {
        return vec![*p; n];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let cos_mu: f64 = rng.gen_range(-1.0..=1.0);
            let nu: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            p.with_sphere(T::lit(cos_mu.acos()), T::lit(nu))
        })
        .collect()
}
