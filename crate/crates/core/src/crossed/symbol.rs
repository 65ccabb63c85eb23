//! Multiplier symbols `φ: G → C`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffalg::C64;
use crate::error::{Error, Result};
use crate::groups::GroupElement;

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplierSymbol {
    /// `g ↦ e^{-λ|g|}`
    ExponentialDecay(f64),
    /// `g ↦ (1+|g|)^s`
    PolynomialWeight(f64),
    /// indicator of the sphere `C_m`
    IndicatorAnnulus(usize),
    /// indicator of the ball `B_n`
    IndicatorBall(usize),
    /// explicit values, zero elsewhere
    Table(BTreeMap<GroupElement, C64>),
}

impl fmt::Display for MultiplierSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierSymbol::ExponentialDecay(l) => write!(f, "exp-decay({l})"),
            MultiplierSymbol::PolynomialWeight(s) => write!(f, "poly-weight({s})"),
            MultiplierSymbol::IndicatorAnnulus(m) => write!(f, "annulus({m})"),
            MultiplierSymbol::IndicatorBall(n) => write!(f, "ball({n})"),
            MultiplierSymbol::Table(t) => write!(f, "table({} entries)", t.len()),
        }
    }
}

impl MultiplierSymbol {
    pub fn eval(&self, g: &GroupElement) -> C64 {
        let k = g.len();
        let re = match self {
            MultiplierSymbol::ExponentialDecay(l) => (-l * k as f64).exp(),
            MultiplierSymbol::PolynomialWeight(s) => (1.0 + k as f64).powf(*s),
            MultiplierSymbol::IndicatorAnnulus(m) => f64::from(u8::from(k == *m)),
            MultiplierSymbol::IndicatorBall(n) => f64::from(u8::from(k <= *n)),
            MultiplierSymbol::Table(t) => return t.get(g).copied().unwrap_or_default(),
        };
        C64::new(re, 0.0)
    }

    /// `m = sup_g |φ(g)| (2+|g|)^{s+1}` over an infinite group where every
    /// length occurs.
    pub fn m_constant(&self, s: f64) -> Result<f64> {
        let e = s + 1.0;
        let w = |k: f64| (2.0 + k).powf(e);
        match self {
            MultiplierSymbol::ExponentialDecay(l) => {
                if *l <= 0.0 {
                    if e > 0.0 {
                        return Err(Error::InfiniteMultiplier(format!("{self} does not decay")));
                    }
                    return Ok(w(0.0));
                }
                // log-concave in k: maximum at the integer nearest (s+1)/λ - 2
                let peak = (e / l - 2.0).max(0.0);
                let best = [peak.floor(), peak.ceil(), 0.0]
                    .into_iter()
                    .map(|k| (-l * k).exp() * w(k))
                    .fold(0.0, f64::max);
                Ok(best)
            }
            MultiplierSymbol::PolynomialWeight(t) => {
                if t + e > 0.0 {
                    return Err(Error::InfiniteMultiplier(format!(
                        "{self} grows against (2+|g|)^{e}"
                    )));
                }
                let f = |k: f64| (1.0 + k).powf(*t) * w(k);
                let mut best = f(0.0).max(if t + e == 0.0 { 1.0 } else { 0.0 });
                if t + e < 0.0 {
                    let peak = (-(2.0 * t + e) / (t + e)).max(0.0);
                    best = best.max(f(peak.floor())).max(f(peak.ceil()));
                }
                Ok(best)
            }
            MultiplierSymbol::IndicatorAnnulus(m) => Ok(w(*m as f64)),
            MultiplierSymbol::IndicatorBall(n) => Ok(w(*n as f64).max(w(0.0))),
            MultiplierSymbol::Table(t) => Ok(t
                .iter()
                .map(|(g, z)| z.norm() * w(g.len() as f64))
                .fold(0.0, f64::max)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    #[test]
    fn values() {
        let z = Group::parse("zd:1").unwrap();
        let g = z.parse_element("x1^3").unwrap();
        assert_eq!(MultiplierSymbol::ExponentialDecay(0.0).eval(&g), C64::new(1.0, 0.0));
        assert_eq!(MultiplierSymbol::PolynomialWeight(2.0).eval(&g).re, 16.0);
        assert_eq!(MultiplierSymbol::IndicatorAnnulus(3).eval(&g).re, 1.0);
        assert_eq!(MultiplierSymbol::IndicatorAnnulus(2).eval(&g).re, 0.0);
        assert_eq!(MultiplierSymbol::IndicatorBall(2).eval(&g).re, 0.0);
    }

    #[test]
    fn m_constant_matches_scan() {
        for sym in [
            MultiplierSymbol::ExponentialDecay(0.25),
            MultiplierSymbol::ExponentialDecay(1.0),
            MultiplierSymbol::ExponentialDecay(3.0),
            MultiplierSymbol::PolynomialWeight(-4.0),
            MultiplierSymbol::PolynomialWeight(-2.5),
        ] {
            let s = 1.5;
            let got = sym.m_constant(s).unwrap();
            let z = Group::parse("zd:1").unwrap();
            let scan = (0..5000)
                .map(|k| {
                    let g = z.from_exponents(&[k]).unwrap();
                    sym.eval(&g).norm() * (2.0 + k as f64).powf(s + 1.0)
                })
                .fold(0.0, f64::max);
            assert!(got >= scan * (1.0 - 1e-12), "{sym}: {got} vs {scan}");
            assert!(got <= scan * (1.0 + 1e-3), "{sym}: {got} vs {scan}");
        }
        assert!(MultiplierSymbol::ExponentialDecay(0.0).m_constant(1.0).is_err());
        assert!(MultiplierSymbol::PolynomialWeight(0.0).m_constant(1.0).is_err());
        assert_eq!(MultiplierSymbol::IndicatorAnnulus(2).m_constant(1.0).unwrap(), 16.0);
    }
}
