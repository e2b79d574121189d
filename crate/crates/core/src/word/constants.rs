//! Moving variable-free factors of a product to the right-hand side.

use super::ast::{Equation, Word};
use super::supercomm::is_supercommutator;
use crate::error::{Error, Result};

fn is_constant(w: &Word) -> bool {
    w.vars().is_empty()
}

/// Rewrite `lhs = rhs`, where `lhs` is a product of supercommutators, into an
/// equivalent equation whose left factors all contain a variable.
///
/// Leading constants move by left multiplication, trailing ones by right
/// multiplication, and an interior constant `c` is pushed to the end with
/// `c·s = s[s,c⁻¹]·c`.
pub fn move_constants_right(eq: &Equation) -> Result<Equation> {
    let mut lhs = eq.lhs.factors();
    if let Some(bad) = lhs.iter().find(|w| !is_supercommutator(w)) {
        return Err(Error::NotAProductOfSupercommutators(bad.to_string()));
    }
    lhs.retain(|w| *w != Word::Identity);
    let mut left: Vec<Word> = vec![];
    let mut right: Vec<Word> = vec![];
    loop {
        if lhs.first().is_some_and(is_constant) {
            left.push(lhs.remove(0).inverse());
        } else if lhs.last().is_some_and(is_constant) {
            right.push(lhs.pop().unwrap().inverse());
        } else if let Some(k) = lhs.iter().rposition(is_constant) {
            let c = lhs.remove(k);
            let ci = c.inverse();
            let tail: Vec<Word> = lhs.split_off(k);
            for s in tail {
                lhs.push(s.clone());
                lhs.push(Word::comm(s, ci.clone()));
            }
            lhs.push(c);
        } else {
            break;
        }
    }
    // left holds c₁⁻¹, c₂⁻¹, … in stripping order; the rhs becomes
    // … c₂⁻¹ c₁⁻¹ · rhs · d₁⁻¹ d₂⁻¹ …
    left.reverse();
    let rhs = Word::product(left.into_iter().chain(std::iter::once(eq.rhs.clone())).chain(right));
    Ok(Equation::new(Word::product(lhs), rhs))
}
