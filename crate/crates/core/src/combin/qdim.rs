use super::young::YoungDiagram;
use crate::error::{invalid, Result};
use crate::exact::{q_int, HalfLaurent, RatFunc};

/// Quantum dimension of the `U_q gl_N` module with highest weight `mu`
/// (padded with zeros to `N` rows).
pub fn qdim_gl(mu: &YoungDiagram, big_n: usize) -> Result<RatFunc> {
    if mu.num_rows() > big_n {
        return Err(invalid(format!("{mu} has more than {big_n} rows")));
    }
    let mut num = HalfLaurent::one();
    let mut den = HalfLaurent::one();
    for i in 0..big_n {
        for j in i + 1..big_n {
            let a = mu.row(i) as i64 - mu.row(j) as i64 + (j - i) as i64;
            num = &num * &q_int(a);
            den = &den * &q_int((j - i) as i64);
        }
    }
    RatFunc::normalize(num, den)
}

/// Quantum dimension of the `U_q sp_{2k}` module labelled by `lam`.
pub fn qdim_sp(lam: &YoungDiagram, k: usize) -> Result<RatFunc> {
    if lam.num_rows() > k {
        return Err(invalid(format!("{lam} has more than {k} rows")));
    }
    let l = |i: usize| lam.row(i - 1) as i64;
    let k2 = 2 * k as i64 + 2;
    let mut num = HalfLaurent::one();
    let mut den = HalfLaurent::one();
    for i in 1..=k {
        for j in i + 1..=k {
            let (ii, jj) = (i as i64, j as i64);
            num = &num * &q_int(l(i) - l(j) + jj - ii);
            num = &num * &q_int(l(i) + l(j) + k2 - ii - jj);
            den = &den * &q_int(jj - ii);
            den = &den * &q_int(k2 - ii - jj);
        }
        let ii = i as i64;
        num = &num * &q_int(2 * l(i) + k2 - 2 * ii);
        den = &den * &q_int(k2 - 2 * ii);
    }
    RatFunc::normalize(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, QNumber};
    use num_traits::One;

    fn d(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn q(m: i64) -> RatFunc {
        crate::exact::q_number(QNumber::Integer(m)).unwrap()
    }

    #[test]
    fn gl_examples() {
        assert!(qdim_gl(&d(&[]), 5).unwrap().is_one());
        assert_eq!(qdim_gl(&d(&[1]), 5).unwrap(), q(5));
        let expected = (&q(5) * &q(4)).checked_div(&q(2)).unwrap();
        assert_eq!(qdim_gl(&d(&[1, 1]), 5).unwrap(), expected);
    }

    #[test]
    fn sp_examples() {
        assert!(qdim_sp(&d(&[]), 2).unwrap().is_one());
        let v = qdim_sp(&d(&[1]), 1).unwrap();
        assert_eq!(v, q(4).checked_div(&q(2)).unwrap());
        assert_eq!(v.evaluate(&GaussianRational::one()).unwrap(), GaussianRational::from_int(2));
        assert!(qdim_sp(&d(&[1, 1]), 1).is_err());
    }

    #[test]
    fn sp_vector_plus_trivial_is_gl_vector() {
        // restriction of the vector representation of gl_5 to sp_4
        let lhs = &RatFunc::one() + &qdim_sp(&d(&[1]), 2).unwrap();
        assert_eq!(lhs, q(5));
    }
}
