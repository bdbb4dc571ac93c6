//! Random unitaries and numeric spectral data.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, Schur, SVD};
use num_rational::Rational64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let z = CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) / 2f64.sqrt()
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn root_of_unity(turns: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * turns)
}

pub fn diagonal(angles: &[f64]) -> CMat {
    let n = angles.len();
    CMat::from_fn(n, n, |i, j| if i == j { root_of_unity(angles[i]) } else { C64::new(0.0, 0.0) })
}

/// `u * diag(angles) * u^*`.
pub fn conjugated_diagonal(u: &CMat, angles: &[Rational64]) -> CMat {
    let d = diagonal(&angles.iter().map(|&r| to_f64(r)).collect::<Vec<_>>());
    u * d * u.adjoint()
}

pub fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Eigenvalues of a unitary, from the diagonal of its complex Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    // Clustered spectra can stall the strictest threshold; relax it in steps.
    let schur = [1e-15, 1e-14, 1e-13, 1e-12]
        .into_iter()
        .find_map(|eps| Schur::try_new(m.clone(), eps, 10_000))
        .expect("Schur iteration converges on unitaries");
    let (_, t) = schur.unpack();
    (0..m.nrows()).map(|i| t[(i, i)]).collect()
}

/// Sorted eigen-angles in turns, each in `[0, 1)`.
pub fn eigen_angles(m: &CMat) -> Vec<f64> {
    let mut v: Vec<f64> = eigenvalues(m)
        .into_iter()
        .map(|z| {
            let t = z.arg() / (2.0 * PI);
            if t < 0.0 {
                t + 1.0
            } else {
                t
            }
        })
        .map(|t| if t >= 1.0 { 0.0 } else { t })
        .collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Distance from an angle (in turns) to the nearest integer.
pub fn circle_dist(t: f64) -> f64 {
    let f = t - t.floor();
    f.min(1.0 - f)
}

/// Outcome of a rank decision made by singular-value thresholding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankDecision {
    pub rank: usize,
    /// Some singular value lies within a factor 1000 of the cutoff.
    pub uncertain: bool,
}

/// Numeric rank with singular values below `cutoff * max(1, sigma_max)` treated as zero.
pub fn rank(m: &CMat, cutoff: f64) -> RankDecision {
    if m.nrows() == 0 || m.ncols() == 0 {
        return RankDecision { rank: 0, uncertain: false };
    }
    let sv = SVD::new(m.clone(), false, false).singular_values;
    let scale = sv.iter().cloned().fold(1.0f64, f64::max);
    let tau = cutoff * scale;
    let rank = sv.iter().filter(|&&s| s >= tau).count();
    let uncertain = sv.iter().any(|&s| s >= tau / 1e3 && s < tau * 1e3);
    RankDecision { rank, uncertain }
}

/// Dimension of the common fixed space of `ms`: the kernel of the stacked `m - 1`.
pub fn fixed_dim(ms: &[&CMat], cutoff: f64) -> RankDecision {
    let n = ms[0].nrows();
    let mut stacked = CMat::zeros(n * ms.len(), n);
    for (k, m) in ms.iter().enumerate() {
        let d = *m - CMat::identity(n, n);
        stacked.view_mut((k * n, 0), (n, n)).copy_from(&d);
    }
    let r = rank(&stacked, cutoff);
    RankDecision { rank: n - r.rank, uncertain: r.uncertain }
}

/// `d2(T)^2 = 2 (n - |Tr T|)` for a unitary `T`.
pub fn d2_sq(m: &CMat) -> f64 {
    2.0 * (m.nrows() as f64 - m.trace().norm())
}

/// `A ⊗ B`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Permutation matrix of the tensor factors of `(C^d)^{⊗k}`: factor `i` goes to slot `perm[i]`.
pub fn tensor_permutation(d: usize, perm: &[usize]) -> CMat {
    let k = perm.len();
    let n = d.pow(k as u32);
    let mut m = CMat::zeros(n, n);
    for src in 0..n {
        let mut digits = vec![0; k];
        let mut x = src;
        for i in (0..k).rev() {
            digits[i] = x % d;
            x /= d;
        }
        let mut out = vec![0; k];
        for i in 0..k {
            out[perm[i]] = digits[i];
        }
        let dst = out.iter().fold(0, |acc, &v| acc * d + v);
        m[(dst, src)] = C64::new(1.0, 0.0);
    }
    m
}

pub fn max_unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMat::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6 {
            assert!(max_unitarity_defect(&haar_unitary(&mut rng, n)) < 1e-12);
        }
    }

    #[test]
    fn conjugation_keeps_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = haar_unitary(&mut rng, 4);
        let a = [Rational64::new(1, 3), Rational64::new(1, 2), Rational64::new(0, 1), Rational64::new(5, 6)];
        let got = eigen_angles(&conjugated_diagonal(&u, &a));
        let mut want: Vec<f64> = a.iter().map(|&r| to_f64(r)).collect();
        want.sort_by(|x, y| x.total_cmp(y));
        for (g, w) in got.iter().zip(&want) {
            assert!(circle_dist(g - w) < 1e-10, "{got:?} {want:?}");
        }
    }

    #[test]
    fn fixed_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = haar_unitary(&mut rng, 5);
        let z = Rational64::new(0, 1);
        let x = conjugated_diagonal(&u, &[z, z, Rational64::new(1, 4), Rational64::new(1, 3), z]);
        let y = conjugated_diagonal(&u, &[z, Rational64::new(1, 2), z, z, Rational64::new(1, 5)]);
        assert_eq!(fixed_dim(&[&x], 1e-8).rank, 3);
        assert_eq!(fixed_dim(&[&x, &y], 1e-8), RankDecision { rank: 1, uncertain: false });
    }

    #[test]
    fn tensor_swap() {
        let p = tensor_permutation(2, &[1, 0]);
        let a = diagonal(&[0.0, 0.25]);
        let b = diagonal(&[0.5, 0.125]);
        let lhs = &p * kron(&a, &b) * p.transpose();
        assert!((lhs - kron(&b, &a)).norm() < 1e-12);
    }
}
