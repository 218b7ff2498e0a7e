use super::perm::Permutation;
use crate::error::{Error, Result};

/// `alpha(eps, delta) = prod_{s<t} (-1)^{delta_s eps_t}`.
pub fn alpha(eps: &[u8], delta: &[u8]) -> Result<i32> {
    if eps.len() != delta.len() {
        return Err(Error::Shape(format!("alpha on vectors of lengths {} and {}", eps.len(), delta.len())));
    }
    Ok(alpha_unchecked(eps, delta))
}

pub(crate) fn alpha_unchecked(eps: &[u8], delta: &[u8]) -> i32 {
    let mut parity = 0u8;
    let mut seen_delta = 0u8;
    for (e, d) in eps.iter().zip(delta) {
        parity ^= seen_delta & e;
        seen_delta ^= d & 1;
    }
    if parity & 1 == 1 {
        -1
    } else {
        1
    }
}

/// `nu(eps, sigma) = prod_{s<t, sigma^-1(s) > sigma^-1(t)} (-1)^{eps_s eps_t}`.
pub fn nu(eps: &[u8], sigma: &Permutation) -> i32 {
    assert_eq!(eps.len(), sigma.degree(), "nu: length mismatch");
    let inv = sigma.inverse();
    let d = eps.len();
    let mut parity = 0u8;
    for s in 0..d {
        for t in s + 1..d {
            if inv.apply0(s) > inv.apply0(t) {
                parity ^= eps[s] & eps[t];
            }
        }
    }
    if parity & 1 == 1 {
        -1
    } else {
        1
    }
}

/// Sum of two parity vectors.
pub fn add_parities(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| (x ^ y) & 1).collect()
}
