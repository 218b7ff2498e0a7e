use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{psi_d, super_tensor, TensorSpace};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Q};
use crate::glsuper::{supertrace, GlElement};
use crate::superindex::{Permutation, SuperSpace};

/// `θ_σ(X_1,…,X_d) = Π_{cycles (i_1 … i_k)} str(X_{i_1} X_{i_2} ⋯ X_{i_k})`.
pub fn theta_sigma(sigma: &Permutation, xs: &[GlElement]) -> Result<Q> {
    if xs.len() != sigma.degree() {
        return Err(Error::InvalidParams(format!(
            "{} matrices for a permutation of degree {}",
            xs.len(),
            sigma.degree()
        )));
    }
    let mut out = Q::ONE;
    for cycle in sigma.cycles() {
        let mut prod = xs[cycle[0] - 1].clone();
        for &c in &cycle[1..] {
            prod = prod.mul(&xs[c - 1]);
        }
        out *= &supertrace(&prod);
    }
    Ok(out)
}

/// `str_{V^{⊗d}}(ψ_d(σ) ∘ (X_1 ⊗ ⋯ ⊗ X_d))`, computed on the tensor space.
/// Agrees with [`theta_sigma`] for even arguments. The cycle `(i_1 … i_k)` of
/// σ pairs the row index of `X_{i_t}` with the column index of `X_{i_{t+1}}`,
/// which is what the matrix ψ_d(σ) does (ψ_d reverses products).
pub fn theta_sigma_tensor(ts: &TensorSpace, sigma: &Permutation, xs: &[GlElement]) -> Result<Q> {
    if xs.len() != ts.d {
        return Err(Error::InvalidParams(format!("{} matrices on V^⊗{}", xs.len(), ts.d)));
    }
    let factors: Vec<(u8, &ExactMatrix)> = xs
        .iter()
        .map(|x| match x.parity() {
            Some(p) => Ok((p.bit(), &x.matrix)),
            None => Err(Error::InvalidParams("θ_σ on V^⊗d needs homogeneous arguments".into())),
        })
        .collect::<Result<_>>()?;
    let op = psi_d(ts, sigma)?.mul(&super_tensor(ts, &factors));
    Ok((0..ts.dim())
        .map(|k| {
            let v = op.get(k, k);
            if ts.total_parity(k) == 1 {
                -v
            } else {
                v
            }
        })
        .sum())
}

/// Integer matrix with entries in `-range..=range`, from a seeded ChaCha stream.
pub fn random_gl(space: SuperSpace, rng: &mut ChaCha8Rng, range: i64) -> GlElement {
    let n = space.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push((i, j, Q::from_int(rng.gen_range(-range..=range))));
        }
    }
    GlElement::new(space, ExactMatrix::from_entries(n, n, entries)).expect("square of the right size")
}

/// An invertible even element and its inverse, deterministic in `seed`.
pub fn random_even_invertible(space: SuperSpace, seed: u64) -> (GlElement, GlElement) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = random_gl(space, &mut rng, 3).even_part();
        if let Ok(inv) = g.matrix.inverse() {
            let inv = GlElement::new(space, inv).expect("same shape");
            return (g, inv);
        }
    }
}
