use num_traits::One;

use super::gaussian::GaussianRational;
use super::laurent::HalfLaurent;
use super::ratfunc::RatFunc;
use crate::error::{invalid, Result};

/// Which quantum bracket to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QNumber {
    /// `[m] = (q^m - q^-m)/(q - q^-1)`.
    Integer(i64),
    /// `[k + 1/2] = (s^{2k+1} - s^{-2k-1})/(s^2 - s^-2)`.
    HalfInteger(i64),
    /// `[N]+ = (s^N - s^-N)/(s - s^-1)`.
    Plus(i64),
    /// `[N]- = (s^N + s^-N)/(s + s^-1)`.
    Minus(i64),
}

pub fn q_number(kind: QNumber) -> Result<RatFunc> {
    match kind {
        QNumber::Integer(m) => {
            if m <= 0 {
                return Err(invalid(format!("[{m}] needs a positive argument")));
            }
            Ok(RatFunc::from_laurent(q_int(m)))
        }
        QNumber::HalfInteger(k) => {
            if k < 0 {
                return Err(invalid(format!("[{k}+1/2] needs k >= 0")));
            }
            let e = (2 * k + 1) as i32;
            RatFunc::normalize(
                HalfLaurent::from_int_terms(&[(e, 1), (-e, -1)]),
                HalfLaurent::from_int_terms(&[(2, 1), (-2, -1)]),
            )
        }
        QNumber::Plus(n) | QNumber::Minus(n) => {
            if n <= 0 {
                return Err(invalid(format!("[{n}] needs a positive argument")));
            }
            let alternating = matches!(kind, QNumber::Minus(_));
            Ok(RatFunc::from_laurent(bracket_pm(n, alternating)))
        }
    }
}

/// `[m]` as a Laurent polynomial in `s` (exponents `2(m-1), 2(m-3), …`).
/// `[0] = 0` and `[-m] = -[m]`.
pub fn q_int(m: i64) -> HalfLaurent {
    if m < 0 {
        return -q_int(-m);
    }
    let m = m as i32;
    HalfLaurent::from_terms((0..m).map(|j| (2 * (m - 1 - 2 * j), GaussianRational::one())))
}

/// `[N]+` (alternating = false) or `[N]-` (alternating = true).
pub fn bracket_pm(n: i64, alternating: bool) -> HalfLaurent {
    let n = n as i32;
    HalfLaurent::from_terms((0..n).map(|j| {
        let sign = if alternating && j % 2 == 1 { -1 } else { 1 };
        (n - 1 - 2 * j, GaussianRational::from_int(sign))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_brackets() {
        assert_eq!(q_number(QNumber::Integer(2)).unwrap().to_string(), "s^2+s^-2");
        assert_eq!(
            q_number(QNumber::Plus(5)).unwrap().to_string(),
            "s^4+s^2+1+s^-2+s^-4"
        );
        assert_eq!(q_number(QNumber::Minus(3)).unwrap().to_string(), "s^2-1+s^-2");
        assert!(q_number(QNumber::Integer(0)).is_err());
        assert!(q_number(QNumber::Plus(-1)).is_err());
    }

    #[test]
    fn half_integer_is_a_genuine_fraction() {
        let f = q_number(QNumber::HalfInteger(1)).unwrap();
        let expected = RatFunc::normalize(
            HalfLaurent::from_int_terms(&[(2, 1), (0, 1), (-2, 1)]),
            HalfLaurent::from_int_terms(&[(1, 1), (-1, 1)]),
        )
        .unwrap();
        assert_eq!(f, expected);
        assert!(f.as_laurent().is_none());
    }

    #[test]
    fn three_at_s_two() {
        let v = q_number(QNumber::Integer(3)).unwrap().evaluate(&GaussianRational::from_int(2)).unwrap();
        assert_eq!(v, GaussianRational::from_ratio(273, 16));
    }
}
