//! Symbolic rendering of the integral equation attached to a generator.

use serde::Serialize;

use crate::presentation::Presentation;
use crate::verdict::one_based_one;
use crate::word::Word;

/// One term `eps * n^j_{g s(k, r_j)}` of the equation of generator `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationTerm {
    #[serde(serialize_with = "one_based_one")]
    pub relator: usize,
    /// 1-based position `k` of the occurrence in the relator.
    pub position: usize,
    #[serde(skip)]
    pub suffix: Word,
    pub sign: i64,
}

/// The terms of the equation for generator `i`, one per occurrence of `x_i`
/// in any relator, in relator order and then position order.
pub fn equation_terms(p: &Presentation, i: usize) -> Vec<EquationTerm> {
    let mut out = Vec::new();
    for (j, r) in p.relators().iter().enumerate() {
        for k in r.occurrences(i) {
            let letter = r.letters()[k - 1];
            out.push(EquationTerm {
                relator: j,
                position: k,
                suffix: r.suffix_s(k).expect("occurrence positions are in range"),
                sign: letter.sign(),
            });
        }
    }
    out
}

/// Formats the equation as `n^1_{g x^2 y^2 z^2} + ... - n^3_{g w^-1 z} = 0`.
pub fn format_equation(p: &Presentation, i: usize) -> String {
    let terms = equation_terms(p, i);
    if terms.is_empty() {
        return "0 = 0".to_string();
    }
    let mut out = String::new();
    for (idx, t) in terms.iter().enumerate() {
        let sub = if t.suffix.is_empty() {
            "g".to_string()
        } else {
            format!("g {}", t.suffix.display(p.generators()))
        };
        let term = format!("n^{}_{{{sub}}}", t.relator + 1);
        match (idx, t.sign) {
            (0, 1) => out.push_str(&term),
            (0, _) => out.push_str(&format!("-{term}")),
            (_, 1) => out.push_str(&format!(" + {term}")),
            _ => out.push_str(&format!(" - {term}")),
        }
    }
    out.push_str(" = 0");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn four_generator_example() {
        let p =
            parse_presentation("x, y, z, w | x^2 y^2 z^2 ; x y x^-1 z y z^-1 ; w^2 x^-1 w^-1 z")
                .unwrap();
        assert_eq!(
            format_equation(&p, 0),
            "n^1_{g x^2 y^2 z^2} + n^1_{g x y^2 z^2} + n^2_{g x y x^-1 z y z^-1} - n^2_{g z y z^-1} - n^3_{g w^-1 z} = 0"
        );
        let total: usize = p.relators().iter().map(|r| r.occurrences(1).len()).sum();
        assert_eq!(equation_terms(&p, 1).len(), total);
    }

    #[test]
    fn absent_generator_has_no_terms() {
        let p = parse_presentation("x, y | x^2").unwrap();
        assert!(equation_terms(&p, 1).is_empty());
    }
}
