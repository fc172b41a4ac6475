//! Canonical text form, readable back by [`super::parse`].
//!
//! Terms are ordered by total degree, then lexicographically by exponent
//! vector (so `x` before `y` in degree 1, as `x^2, x*y, y^2` read).

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Polynomial, Variables};
use crate::gaussian::GaussianRational;

fn displays_negative(c: &GaussianRational) -> bool {
    if c.im.is_zero() {
        c.re.is_negative()
    } else {
        c.re.is_zero() && c.im.is_negative()
    }
}

fn monomial(exps: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, name) in exps.iter().zip(names) {
        match *k {
            0 => {}
            1 => parts.push(name.clone()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl Polynomial<GaussianRational> {
    pub fn to_text(&self, vars: &Variables) -> String {
        let names = vars.names();
        assert_eq!(
            names.len(),
            self.nvars(),
            "variable convention does not match nvars"
        );
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (idx, (exps, c)) in terms.into_iter().enumerate() {
            let neg = displays_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial(exps, &names);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Variables::for_nvars(self.nvars())))
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn round_trip(s: &str) -> String {
        let f = parse(s, &Variables::Plane).unwrap();
        let printed = f.to_string();
        assert_eq!(parse(&printed, &Variables::Plane).unwrap(), f, "{printed}");
        printed
    }

    #[test]
    fn canonical_order_and_signs() {
        assert_eq!(round_trip("-x^3 + y^2"), "y^2 - x^3");
        assert_eq!(
            round_trip("(y^2 - x^3)*(y - 2*x)"),
            "-2*x*y^2 + y^3 + 2*x^4 - x^3*y"
        );
        assert_eq!(round_trip("i*x + 1/2*y"), "i*x + 1/2*y");
        assert_eq!(
            round_trip("-i*x - 3/2*i*y + (1 - i)*x^2"),
            "-i*x - 3/2*i*y + (1 - i)*x^2"
        );
        assert_eq!(round_trip("7 - x"), "7 - x");
    }

    #[test]
    fn zero_prints_as_zero() {
        let z = Polynomial::<GaussianRational>::zero(2);
        assert_eq!(z.to_string(), "0");
    }
}
