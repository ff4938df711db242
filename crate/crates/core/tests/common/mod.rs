#![allow(dead_code)]

use bandsample::lattice::{enum_multi_indices, enum_window};
use bandsample::{
    Bandwidth, Complex, LatticeSpacing, MultiIndex, SampleSet, TruncationWindow, ValueKind,
};
use rand::Rng;

/// A finite double drawn across many binades, including subnormals and signed zeros.
pub fn wild_f64<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..6) {
        0 => 0.0,
        1 => -0.0,
        2 => f64::from_bits(rng.gen_range(1..(1u64 << 52))) * if rng.gen() { 1.0 } else { -1.0 },
        3 => rng.gen_range(-1.0..1.0),
        _ => {
            let exp = rng.gen_range(-300i32..300);
            rng.gen_range(-1.0..1.0) * 2f64.powi(exp)
        }
    }
}

/// A random valid sample set with `n <= 3`.
pub fn random_set<R: Rng>(rng: &mut R) -> SampleSet {
    let n = rng.gen_range(1..=3);
    let double = rng.gen::<bool>();
    let kind = if rng.gen() {
        ValueKind::Complex
    } else {
        ValueKind::Real
    };
    let sigma = Bandwidth::new((0..n).map(|_| rng.gen_range(0.01..100.0)).collect()).unwrap();
    let tau = TruncationWindow::new((0..n).map(|_| rng.gen_range(0..3)).collect()).unwrap();
    let spacing = if double {
        LatticeSpacing::Double
    } else {
        LatticeSpacing::Nyquist
    };
    let p = rng.gen_range(1.0..10.0);
    let mut set = SampleSet::new(sigma, spacing, tau.clone(), p, kind).unwrap();
    let ks = if double {
        enum_multi_indices(n).unwrap()
    } else {
        vec![MultiIndex::zero(n).unwrap()]
    };
    for k in ks {
        for m in enum_window(&tau).unwrap() {
            // Leave some records out; completeness is not a storage invariant.
            if rng.gen_bool(0.1) {
                continue;
            }
            let im = match kind {
                ValueKind::Real => 0.0,
                ValueKind::Complex => wild_f64(rng),
            };
            set.insert(k, m, Complex::new(wild_f64(rng), im)).unwrap();
        }
    }
    set
}
