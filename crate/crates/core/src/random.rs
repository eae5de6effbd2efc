//! Seeded random states, channels and measurements.
//!
//! Every stream is a `ChaCha8Rng` keyed by the run seed; independent work units
//! take distinct stream ids so results do not depend on thread scheduling.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::linalg::{c, r, C64, CMat2, Ket2};
use crate::qchannel::{bloch_to_density, Channel, DensityMatrix, PauliChannel};
use crate::switch::ControlledOp;
use crate::tasks::qrac::{Povm2, QracStrategy};

pub const RNG_NAME: &str = "ChaCha8";

/// Generator for work unit `stream` of the run keyed by `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_c64(rng: &mut impl Rng) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniform point in the unit ball.
pub fn bloch_in_ball(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let a: [f64; 3] = [0; 3].map(|_| rng.random_range(-1.0..=1.0));
        if a.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return a;
        }
    }
}

/// Uniform point on the unit sphere.
pub fn bloch_on_sphere(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let g: [f64; 3] = [0; 3].map(|_| rng.sample(StandardNormal));
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            return g.map(|x| x / n);
        }
    }
}

pub fn mixed_state(rng: &mut impl Rng) -> DensityMatrix {
    bloch_to_density(bloch_in_ball(rng)).expect("inside ball")
}

pub fn pure_state(rng: &mut impl Rng) -> DensityMatrix {
    bloch_to_density(bloch_on_sphere(rng)).expect("on sphere")
}

/// Haar-random SU(2) element from a uniform unit quaternion.
pub fn unitary(rng: &mut impl Rng) -> CMat2 {
    let q: [f64; 4] = loop {
        let g: [f64; 4] = [0; 4].map(|_| rng.sample(StandardNormal));
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            break g.map(|x| x / n);
        }
    };
    let a = c(q[0], q[1]);
    let b = c(q[2], q[3]);
    CMat2::new(a, -b.conj(), b, a.conj())
}

/// Random channel with `rank` Kraus operators from a Gaussian isometry `C² → C^{2·rank}`.
pub fn channel(rng: &mut impl Rng, rank: usize) -> Channel {
    assert!((1..=4).contains(&rank), "Kraus rank between 1 and 4");
    let g = DMatrix::<C64>::from_fn(2 * rank, 2, |_, _| gaussian_c64(rng));
    let q = g.qr().q();
    let ops = (0..rank)
        .map(|k| CMat2::from_fn(|i, j| q[(2 * k + i, j)]))
        .collect();
    Channel::from_kraus(ops).expect("isometry blocks are complete")
}

/// Channel with Kraus rank drawn uniformly from 1..=4.
pub fn any_channel(rng: &mut impl Rng) -> Channel {
    let rank = rng.random_range(1..=4);
    channel(rng, rank)
}

/// Uniform on the CP tetrahedron (flat Dirichlet on the weights).
pub fn pauli_channel(rng: &mut impl Rng) -> PauliChannel {
    let e: [f64; 4] = [0; 4].map(|_| rng.sample(Exp1));
    let s: f64 = e.iter().sum();
    PauliChannel::new(e.map(|x| x / s)).expect("normalised weights")
}

/// Effect `V diag(a, b) V†` with `a, b` uniform in `[0, 1]`.
pub fn effect(rng: &mut impl Rng) -> CMat2 {
    let v = unitary(rng);
    let d = CMat2::new(r(rng.random()), r(0.0), r(0.0), r(rng.random()));
    let e = v * d * v.adjoint();
    (e + e.adjoint()) * r(0.5)
}

pub fn povm2(rng: &mut impl Rng) -> Povm2 {
    Povm2::from_effect(effect(rng)).expect("effect between 0 and I")
}

pub fn projective_povm(rng: &mut impl Rng) -> Povm2 {
    Povm2::along(bloch_on_sphere(rng)).expect("unit axis")
}

/// Random pure code states and two random two-outcome measurements.
pub fn qrac_strategy(rng: &mut impl Rng) -> QracStrategy {
    let encode = [0; 4].map(|_| pure_state(rng));
    let measurements = [povm2(rng), povm2(rng)];
    QracStrategy::new(encode, measurements).expect("qubit code states")
}

/// Random orthonormal control basis with two random channels.
pub fn controlled_op(rng: &mut impl Rng) -> ControlledOp {
    let u = unitary(rng);
    let a = Ket2::new(u[(0, 0)], u[(1, 0)]);
    let b = Ket2::new(u[(0, 1)], u[(1, 1)]);
    let first = any_channel(rng);
    let second = any_channel(rng);
    ControlledOp::new(a, b, first, second).expect("unitary columns are orthonormal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn substreams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| substream(7, 0).random()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let x: u64 = substream(7, 0).random();
        let y: u64 = substream(7, 1).random();
        assert_ne!(x, y);
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = substream(1, 0);
        for _ in 0..50 {
            let u = unitary(&mut rng);
            assert!(max_abs_diff(&(u * u.adjoint()), &CMat2::identity()) < 1e-12);
        }
    }

    #[test]
    fn random_channels_are_trace_preserving() {
        let mut rng = substream(2, 0);
        for rank in 1..=4 {
            let ch = channel(&mut rng, rank);
            assert!(ch.kraus().completeness_deviation() < 1e-12);
            assert_eq!(ch.kraus().len(), rank);
        }
    }

    #[test]
    fn controlled_ops_construct() {
        let mut rng = substream(3, 0);
        for _ in 0..20 {
            let _ = controlled_op(&mut rng);
            let _ = qrac_strategy(&mut rng);
        }
    }
}
