//! Published reference values, kept as text exactly as printed so that
//! comparisons never depend on code that produced them.

use crate::error::{Error, Result};
use crate::ladder::NormalOrdered;
use crate::parse::parse_poly;
use crate::poly::PhasePoly;
use crate::CycloScalar;

/// `(f, g, f ⋆ g)`.
pub const STAR_PRODUCTS: [(&str, &str, &str); 3] =
    [("p^2", "x", "p^2 x - i p"), ("p", "x^2", "p x^2 - i x"), ("p", "x", "p x - i/2")];

/// Metric coefficients `c₁..c₄` of the lattice Reggeon model at `Δ = 1`.
pub const SSLR_C: [&str; 4] = [
    "p^3-2p+p x^2",
    "p^6-4p^4+p^2+x^2-4p^2x^2+2p^4x^2+p^2x^4",
    "2/3 p^9-4p^7-5p^5+24p^3-4p+8p x^2-6p^3x^2-8p^5x^2+2p^7x^2-p x^4+2/3 p^3x^6-4p^3x^4+2p^5x^4",
    "1/3 p^12-8/3 p^10-12p^8+76p^6-5p^4-72p^2+24x^2-18p^2x^2+104p^4x^2-28p^6x^2-8p^8x^2-13x^4\
     +28p^2x^4-20p^4x^4-8p^6x^4+2p^8x^4-4p^2x^6+4/3 p^10x^2-8/3 p^4x^6+4/3 p^6x^6+1/3 p^4x^8",
];

/// Square-root coefficients `q₃`, `q₄`.
pub const SSLR_Q34: [&str; 2] = [
    "1/6 p^9-p^7-17/4 p^5+16p^3-3p-15/2 p^3x^2+1/2 p^7x^2+1/2 p^5x^4+1/6 p^3x^6-13/4 p x^4\
     -p^3x^4+12p x^2-2p^5x^2",
    "-35p^2+11/8 p^4+51/2 p^6-9/2 p^8-1/3 p^10+1/24 p^12-25/4 p^2x^2+39/2 p^2x^4+1/24 p^4x^8\
     +1/6 p^10x^2-61/8 x^4-23/2 p^4x^4-25/2 p^6x^2+1/4 p^8x^4-7/2 p^2x^6-1/3 p^4x^6+1/6 p^6x^6\
     +45p^4x^2-p^8x^2-p^6x^4+13x^2",
];

/// Counterpart blocks `h₀`, `h₂`, `h₄`.
pub const SSLR_H: [&str; 3] = [
    "1/2(x^2+p^2-1)",
    "3/2 p^4-4p^2+1-4x^2+3p^2x^2+3/2 x^4",
    "-(17/2 p^6-34p^4+4p^2+8+4x^2-48p^2x^2+41/2 p^4x^2-14x^4+31/2 p^2x^4+7/2 x^6)",
];

/// Printed metric exponent for the `H-SS3` row, per unit `g/Δ`.
pub const SS3_EXPONENT: &str = "-sqrt2 (1/3 p^3 - 2 p^2)";

/// Printed metric exponent for `H-EX1`, per unit `g/λ`.
pub const EX1_EXPONENT: &str = "-(x^2 + p^2)";

pub fn poly(src: &str) -> PhasePoly {
    parse_poly(src).expect("reference literal parses")
}

fn ops() -> (NormalOrdered, NormalOrdered) {
    (NormalOrdered::adag(), NormalOrdered::a())
}

fn int(c: i64) -> CycloScalar {
    CycloScalar::from_int(c)
}

/// Ladder form of the square-root coefficients `q₁`, `q₂`.
pub fn sslr_eta_ladder(n: usize) -> Option<NormalOrdered> {
    let (ad, an) = ops();
    let one = NormalOrdered::one();
    match n {
        1 => Some((&(&ad * &(&ad - &an)) * &an).scale(&(CycloScalar::i() * CycloScalar::sqrt2()))),
        2 => {
            // a†[a†(2a†a − a†a† − aa + 5)a − 2a†a† − 2aa + 2]a
            let inner = &(&(&(&ad * &an).scale(&int(2)) - &(&ad * &ad)) - &(&an * &an)) + &one.scale(&int(5));
            let bracket = &(&(&(&(&ad * &inner) * &an) - &(&ad * &ad).scale(&int(2))) - &(&an * &an).scale(&int(2)))
                + &one.scale(&int(2));
            Some(&(&ad * &bracket) * &an)
        }
        _ => None,
    }
}

/// Ladder form of the counterpart blocks `h₀`, `h₂`, `h₄`.
pub fn sslr_h_ladder(n: usize) -> Option<NormalOrdered> {
    let (ad, an) = ops();
    let num = &ad * &an;
    let sc = |c: i64, op: &NormalOrdered| op.scale(&int(c));
    match n {
        0 => Some(num),
        2 => Some(&(&ad * &(&sc(6, &num) + &NormalOrdered::scalar(int(4)))) * &an),
        4 => {
            let (adad, aa) = (&ad * &ad, &an * &an);
            let t1 = &(&adad * &(&(&sc(10, &adad) + &sc(10, &aa)) - &sc(48, &num))) * &aa;
            let t2 = &(&ad * &(&(&sc(20, &adad) + &sc(20, &aa)) - &sc(120, &num))) * &an;
            Some(&(&t1 + &t2) - &sc(32, &num))
        }
        _ => None,
    }
}

/// Names accepted by `golden`.
pub const GOLDEN_NAMES: [&str; 9] =
    ["sslr-c1", "sslr-c2", "sslr-c3", "sslr-c4", "sslr-q3", "sslr-q4", "sslr-h0", "sslr-h2", "sslr-h4"];

/// A printed SSLR polynomial by name. Dashes and case are ignored, so
/// `ssl-r-c4` and `SSLR-C4` both resolve.
pub fn golden(name: &str) -> Result<PhasePoly> {
    let key: String = name.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_ascii_lowercase();
    let src = match key.as_str() {
        "sslrc1" => SSLR_C[0],
        "sslrc2" => SSLR_C[1],
        "sslrc3" => SSLR_C[2],
        "sslrc4" => SSLR_C[3],
        "sslrq3" => SSLR_Q34[0],
        "sslrq4" => SSLR_Q34[1],
        "sslrh0" => SSLR_H[0],
        "sslrh2" => SSLR_H[1],
        "sslrh4" => SSLR_H[2],
        _ => return Err(Error::PreconditionViolation(format!("unknown golden `{name}`"))),
    };
    Ok(poly(src))
}
