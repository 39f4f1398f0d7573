use super::bratteli::{bratteli, BratteliGraph};
use super::young::YoungDiagram;
use crate::error::{invalid, Result};

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for j in 0..k as u64 {
        acc = acc * (n as u64 - j) / (j + 1);
    }
    acc
}

/// `n! / r!`.
pub fn falling(n: usize, r: usize) -> u64 {
    ((r + 1) as u64..=n as u64).product()
}

/// Number of standard Young tableaux of shape `lam`.
pub fn hook_dim(lam: &YoungDiagram) -> u64 {
    // multiply and divide alternately to keep intermediates small
    let hooks = lam.hook_lengths();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (k, h) in hooks.iter().enumerate() {
        num *= (k + 1) as u128;
        den *= *h as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num as u64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Involution numbers: `h_0 = h_1 = 1`, `h_{r+1} = h_r + r·h_{r-1}`.
pub fn involution_number(r: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for j in 1..=r {
        (a, b) = (b, b + j as u64 * a);
    }
    a
}

/// Closed multiplicity formula `h_{n-|λ|}·C(n,|λ|)·d_λ`, valid for `N > 2n`.
pub fn multiplicity_formula(n: usize, lam: &YoungDiagram) -> u64 {
    let r = lam.size();
    if r > n {
        return 0;
    }
    involution_number(n - r) * binomial(n, r) * hook_dim(lam)
}

/// Multiplicity of `V_λ` in `V^{⊗n}` for `Sp(N-1)`: closed formula when
/// `N > 2n`, Bratteli path count otherwise.
pub fn multiplicity(n: usize, lam: &YoungDiagram, big_n: usize) -> Result<u64> {
    let k = super::bratteli::row_limit(big_n)?;
    if big_n > 2 * n {
        if lam.num_rows() > k {
            return Ok(0);
        }
        return Ok(multiplicity_formula(n, lam));
    }
    Ok(bratteli(big_n, n)?.multiplicity(n, lam))
}

/// `n!/r! · C(n,r) · h_r²` for `r = 0..=n`.
pub fn end_dim_breakdown(n: usize) -> Vec<u64> {
    (0..=n)
        .map(|r| falling(n, r) * binomial(n, r) * involution_number(r).pow(2))
        .collect()
}

pub fn end_dim_formula(n: usize) -> u64 {
    end_dim_breakdown(n).iter().sum()
}

/// `dim End_{Sp(N-1)}(V^{⊗n})`.
pub fn end_dim(n: usize, big_n: usize) -> Result<u64> {
    super::bratteli::row_limit(big_n)?;
    if big_n > 2 * n {
        return Ok(end_dim_formula(n));
    }
    Ok(bratteli(big_n, n)?.sum_of_squares(n))
}

/// Path-count oracle for [`end_dim`], computed regardless of `N`.
pub fn end_dim_paths(n: usize, big_n: usize) -> Result<u64> {
    Ok(bratteli(big_n, n)?.sum_of_squares(n))
}

/// Dimension `C(n,r)·d_λ·d_μ` of the `W(B_n)` irreducible labelled by `(λ, μ)`.
pub fn wb_dim(n: usize, r: usize, lam: &YoungDiagram, mu: &YoungDiagram) -> Result<u64> {
    if lam.size() != r || mu.size() + r != n {
        return Err(invalid(format!(
            "need |λ| = r = {r} and |μ| = n - r = {}, got {} and {}",
            n.saturating_sub(r),
            lam.size(),
            mu.size()
        )));
    }
    Ok(binomial(n, r) * hook_dim(lam) * hook_dim(mu))
}

/// Unrestricted Bratteli graph, used as the path-count oracle for large `N`.
pub fn unrestricted(depth: usize) -> BratteliGraph {
    BratteliGraph::build(None, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn involution_numbers() {
        let h: Vec<u64> = (0..7).map(involution_number).collect();
        assert_eq!(h, vec![1, 1, 2, 4, 10, 26, 76]);
    }

    #[test]
    fn hook_dims() {
        assert_eq!(hook_dim(&d(&[4])), 1);
        assert_eq!(hook_dim(&d(&[2, 1])), 2);
        assert_eq!(hook_dim(&d(&[2, 2])), 2);
        assert_eq!(hook_dim(&d(&[3, 2, 1])), 16);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(3, &d(&[]), 7).unwrap(), 4);
        assert_eq!(multiplicity(3, &d(&[1]), 3).unwrap(), 5);
        assert_eq!(multiplicity(4, &d(&[2]), 9).unwrap(), 12);
        assert_eq!(bratteli(9, 4).unwrap().multiplicity(4, &d(&[2])), 12);
    }

    #[test]
    fn end_dims() {
        assert_eq!(end_dim(2, 5).unwrap(), 10);
        assert_eq!(end_dim(3, 7).unwrap(), 76);
        assert_eq!(end_dim(3, 3).unwrap(), 51);
        assert_eq!(end_dim_breakdown(3), vec![6, 18, 36, 16]);
        assert_eq!(end_dim(2, 4).unwrap_err().to_string(), "invalid argument: N must be odd");
    }

    #[test]
    fn wb_dims() {
        assert_eq!(wb_dim(2, 1, &d(&[1]), &d(&[1])).unwrap(), 2);
        assert_eq!(wb_dim(3, 0, &d(&[]), &d(&[2, 1])).unwrap(), 2);
        assert_eq!(wb_dim(4, 1, &d(&[1]), &d(&[2, 1])).unwrap(), 4 * 2);
        assert!(wb_dim(3, 1, &d(&[2]), &d(&[1])).is_err());
    }
}
