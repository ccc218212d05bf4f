//! Exact-arithmetic engine for equivariant syzygy invariants of Segre embeddings.
//!
//! The crate is organised bottom-up:
//!
//! * [`partition`]: partitions, hook lengths, Kostka and Littlewood–Richardson numbers.
//! * [`characters`]: symmetric-group class data, Murnaghan–Nakayama characters, Kronecker coefficients.
//! * [`schur`]: the ring of polynomial functors in the Schur basis, with the point-wise tensor product.
//! * [`series`]: truncated series in commuting variables `X_λ`, Euler characteristics and syzygy series.
//! * [`koszul`]: brute-force Koszul homology of Segre coordinate rings at fixed dimensions.
//! * [`rationality`]: multinomial sums, torus constant terms and rational reconstruction.
//! * [`verify`]: the acceptance checks, shared by the test suite and the command line.

pub mod characters;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod rationality;
pub mod schur;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use partition::Partition;

/// Exact rational numbers used for every coefficient in the crate.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parse `"a/b"` or `"a"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if num_traits::Zero::is_zero(&d) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?),
    };
    Ok(parsed)
}
