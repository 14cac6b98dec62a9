//! Discrete spectrum and eigenfunctions on the box `[−l, l]` with the
//! interaction at `x = 0` and the same Robin length `L` at both edges,
//! `φ(l) + Lφ′(l) = 0` and `φ(−l) − Lφ′(−l) = 0`.
//!
//! In the eigenbasis of `U` the problem splits into two independent Robin
//! channels on `(0, l]` with origin lengths `L±`.

mod channel;
mod eigen;
mod fd;
mod secular;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use channel::{
    channel_function, channel_lowest, channel_spectrum, edge_angle, prufer_angle, refine_root, ChannelProblem,
};
pub use eigen::{eigenfunction, eigenfunction_u, null_amplitudes, NULL_THRESHOLD};
pub use fd::{fd_lowest, fd_matrix, fd_oracle, Tridiagonal};
pub use secular::{secular_det, secular_det_u, secular_matrix, secular_matrix_u, secular_roots, secular_roots_of};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::u2core::{PointInteraction, RobinCondition};

/// Box geometry, edge condition and solver settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxConfig<T> {
    /// Half-length.
    pub l: T,
    pub edge: RobinCondition<T>,
    pub e_min: T,
    pub e_max: T,
    /// Absolute root tolerance in energy.
    pub tol: T,
}

impl<T: Real> Default for BoxConfig<T> {
    /// `l = π`, Dirichlet edges, window `[−10⁴, 400]`.
    fn default() -> Self {
        Self {
            l: T::PI(),
            edge: RobinCondition::dirichlet(),
            e_min: T::lit(-1e4),
            e_max: T::lit(400.0),
            tol: T::default_tol(),
        }
    }
}

impl<T: Real> BoxConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.l > T::zero() && self.l.is_finite()) {
            return Err(Error::InvalidBox(format!("half-length must be positive, got {}", self.l)));
        }
        if !(self.e_min < self.e_max && self.e_min.is_finite() && self.e_max.is_finite()) {
            return Err(Error::InvalidBox(format!("bad energy window [{}, {}]", self.e_min, self.e_max)));
        }
        if !(self.tol > T::zero()) {
            return Err(Error::InvalidBox(format!("tolerance must be positive, got {}", self.tol)));
        }
        if !(self.edge.a.is_finite() && self.edge.b.is_finite())
            || (self.edge.a == T::zero() && self.edge.b == T::zero())
        {
            return Err(Error::InvalidBox("edge condition must be a finite nonzero (a, b)".into()));
        }
        Ok(())
    }

    /// Levels closer than this are merged into one doubly degenerate level.
    pub fn merge_tol(&self) -> T {
        T::lit(100.0) * self.tol
    }

    /// Edge length `L`, infinite for Neumann.
    pub fn edge_length(&self) -> T {
        self.edge.length()
    }

    pub fn with_window(mut self, e_min: T, e_max: T) -> Self {
        self.e_min = e_min;
        self.e_max = e_max;
        self
    }
}

/// Which channel produces a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelChannel {
    Plus,
    Minus,
    Both,
    /// Produced by a method that does not separate channels.
    Unlabelled,
}

impl LevelChannel {
    pub fn as_str(&self) -> &'static str {
        match self {
            LevelChannel::Plus => "plus",
            LevelChannel::Minus => "minus",
            LevelChannel::Both => "both",
            LevelChannel::Unlabelled => "unlabelled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level<T> {
    pub energy: T,
    pub multiplicity: usize,
    pub channel: LevelChannel,
}

/// Sorted levels with multiplicities.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Spectrum<T> {
    pub levels: Vec<Level<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Energies repeated by multiplicity.
    pub fn energies(&self) -> Vec<T> {
        self.levels.iter().flat_map(|l| std::iter::repeat_n(l.energy, l.multiplicity)).collect()
    }

    /// Largest level discrepancy, or infinity if the level structure differs.
    /// Channel tags are ignored.
    pub fn max_discrepancy(&self, other: &Self) -> T {
        if self.levels.len() != other.levels.len() {
            return T::infinity();
        }
        let mut worst = T::zero();
        for (a, b) in self.levels.iter().zip(&other.levels) {
            if a.multiplicity != b.multiplicity {
                return T::infinity();
            }
            worst = worst.max((a.energy - b.energy).abs());
        }
        worst
    }

    /// `index,energy,multiplicity,channel` with a 1-based index.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,energy,multiplicity,channel\n");
        for (i, l) in self.levels.iter().enumerate() {
            let _ = writeln!(s, "{},{:.16e},{},{}", i + 1, l.energy, l.multiplicity, l.channel.as_str());
        }
        s
    }
}

/// Sort and pair up levels closer than `tol`.
pub fn merge_levels<T: Real>(mut tagged: Vec<(T, LevelChannel)>, tol: T) -> Spectrum<T> {
    tagged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut levels: Vec<Level<T>> = Vec::with_capacity(tagged.len());
    let mut i = 0;
    while i < tagged.len() {
        let (e, c) = tagged[i];
        if i + 1 < tagged.len() && (tagged[i + 1].0 - e).abs() <= tol {
            let (e2, c2) = tagged[i + 1];
            let channel = if c == c2 { c } else { LevelChannel::Both };
            levels.push(Level { energy: (e + e2) * T::half(), multiplicity: 2, channel });
            i += 2;
        } else {
            levels.push(Level { energy: e, multiplicity: 1, channel: c });
            i += 1;
        }
    }
    Spectrum { levels }
}

/// All box levels in the configured window. Depends on `p` only through
/// `(θ₊, θ₋)`.
pub fn box_spectrum<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>) -> Result<Spectrum<T>> {
    bx.validate()?;
    let [rp, rm] = p.channel_conditions();
    let window = (bx.e_min, bx.e_max);
    let plus = channel_spectrum(&rp, &bx.edge, bx.l, window, bx.tol)?;
    let minus = channel_spectrum(&rm, &bx.edge, bx.l, window, bx.tol)?;
    let tagged = plus
        .into_iter()
        .map(|e| (e, LevelChannel::Plus))
        .chain(minus.into_iter().map(|e| (e, LevelChannel::Minus)))
        .collect();
    Ok(merge_levels(tagged, bx.merge_tol()))
}

/// The `count` lowest box energies (with multiplicity), ignoring the window.
pub fn box_lowest<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>, count: usize) -> Result<Vec<T>> {
    Ok(box_lowest_tagged(p, bx, count)?.into_iter().map(|(e, _)| e).collect())
}

/// As [`box_lowest`], keeping the producing channel of each energy.
pub fn box_lowest_tagged<T: Real>(
    p: &PointInteraction<T>,
    bx: &BoxConfig<T>,
    count: usize,
) -> Result<Vec<(T, LevelChannel)>> {
    bx.validate()?;
    let [rp, rm] = p.channel_conditions();
    let plus = channel_lowest(&rp, &bx.edge, bx.l, count, bx.tol)?;
    let minus = channel_lowest(&rm, &bx.edge, bx.l, count, bx.tol)?;
    let mut all: Vec<(T, LevelChannel)> = plus
        .into_iter()
        .map(|e| (e, LevelChannel::Plus))
        .chain(minus.into_iter().map(|e| (e, LevelChannel::Minus)))
        .collect();
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    all.truncate(count);
    Ok(all)
}

/// JSON form of a spectrum together with the settings that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport<T> {
    pub tol: T,
    pub window: [T; 2],
    pub l: T,
    /// Edge length `L`; `None` for a Neumann edge.
    pub l_edge: Option<T>,
    pub levels: Vec<Level<T>>,
}

impl<T: Real> SpectrumReport<T> {
    pub fn new(spectrum: &Spectrum<T>, bx: &BoxConfig<T>) -> Self {
        let le = bx.edge_length();
        Self {
            tol: bx.tol,
            window: [bx.e_min, bx.e_max],
            l: bx.l,
            l_edge: if le.is_finite() { Some(le) } else { None },
            levels: spectrum.levels.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type P = PointInteraction<f64>;

    #[test]
    fn self_dual_dirichlet_doubles_squares() {
        let p = P::self_dual(PI);
        let s = box_spectrum(&p, &BoxConfig { e_max: 50.0, ..BoxConfig::default() }).unwrap();
        assert_eq!(s.len(), 7);
        for (n, l) in s.levels.iter().enumerate() {
            let k = (n + 1) as f64;
            assert!((l.energy - k * k).abs() < 1e-9);
            assert_eq!(l.multiplicity, 2);
            assert_eq!(l.channel, LevelChannel::Both);
        }
    }

    #[test]
    fn swap_gives_identical_levels() {
        let bx = BoxConfig::default();
        let a = box_spectrum(&P::new(PI, 0.0, 0.0, 0.0), &bx).unwrap();
        let b = box_spectrum(&P::new(0.0, PI, 0.0, 0.0), &bx).unwrap();
        assert_eq!(a.max_discrepancy(&b), 0.0);
        let c = box_spectrum(&P::new(1.1, 5.2, 0.3, 0.9), &bx).unwrap();
        let d = box_spectrum(&P::new(5.2, 1.1, 2.0, 4.0), &bx).unwrap();
        assert_eq!(c.energies(), d.energies());
    }

    #[test]
    fn sphere_position_is_irrelevant() {
        let bx = BoxConfig::default();
        let a = box_spectrum(&P::new(2.1, 0.4, 0.0, 0.0), &bx).unwrap();
        let b = box_spectrum(&P::new(2.1, 0.4, 1.9, 5.5), &bx).unwrap();
        assert_eq!(a.max_discrepancy(&b), 0.0);
    }

    #[test]
    fn lowest_matches_window() {
        let p = P::new(2.1, 0.4, 0.7, 1.0);
        let bx = BoxConfig::default();
        let all = box_spectrum(&p, &bx).unwrap().energies();
        let low = box_lowest(&p, &bx, 12).unwrap();
        for (a, b) in low.iter().zip(&all) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn invalid_box_is_rejected() {
        let bx = BoxConfig { l: -1.0, ..BoxConfig::default() };
        assert!(matches!(box_spectrum(&P::self_dual(1.0), &bx), Err(Error::InvalidBox(_))));
        let bx = BoxConfig { e_min: 5.0, e_max: 1.0, ..BoxConfig::<f64>::default() };
        assert!(bx.validate().is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let s = box_spectrum(&P::self_dual(PI), &BoxConfig { e_max: 5.0, ..BoxConfig::default() }).unwrap();
        let csv = s.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("index,energy,multiplicity,channel"));
        assert!(lines.next().unwrap().starts_with("1,1.0000000000"));
    }
}
