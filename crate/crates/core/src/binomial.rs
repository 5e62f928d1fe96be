use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k > n`.
///
/// Uses the multiplicative form `C(n, k) = prod_{i=1..k} (n - k + i) / i`;
/// every intermediate quotient is itself a binomial coefficient, so the
/// integer division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigUint::one();
    row.push(acc.clone());
    for k in 1..=n {
        acc *= n - k + 1;
        acc /= k;
        row.push(acc.clone());
    }
    row
}
