//! Evaluation of words in a concrete group.
//!
//! Conventions: `x^y = y⁻¹xy`, `[x,y] = x⁻¹y⁻¹xy`, and
//! `[x,_{n+1} y] = [[x,_n y], y]`.

use std::collections::BTreeMap;

use super::ast::{Equation, Word};
use crate::error::{Error, Result};
use crate::group::Group;

/// Constant name → element index.
pub type Bindings = BTreeMap<String, usize>;

#[derive(Clone, Debug)]
enum Op {
    Push(usize),
    Var(usize),
    Inv,
    Mul,
    Pow(i64),
    Conj,
    Comm,
    Engel(u32),
}

/// A word compiled against a group with all constants resolved.
#[derive(Clone, Debug)]
pub struct Compiled {
    ops: Vec<Op>,
    arity: usize,
}

fn resolve(g: &Group, name: &str, bindings: &Bindings) -> Result<usize> {
    if name.starts_with('#') {
        return g.element(name).ok_or_else(|| Error::UnboundConstant(name.into()));
    }
    bindings.get(name).copied().filter(|&i| i < g.order()).ok_or_else(|| Error::UnboundConstant(name.into()))
}

impl Compiled {
    pub fn new(g: &Group, w: &Word, bindings: &Bindings) -> Result<Compiled> {
        let mut ops = vec![];
        emit(g, w, bindings, &mut ops)?;
        Ok(Compiled { ops, arity: w.arity() })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Evaluate with a caller-provided stack (cleared on entry).
    #[inline]
    pub fn eval_with(&self, g: &Group, assignment: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Push(e) => stack.push(e),
                Op::Var(i) => stack.push(assignment[i]),
                Op::Inv => {
                    let a = stack.pop().unwrap();
                    stack.push(g.inv(a));
                }
                Op::Pow(k) => {
                    let a = stack.pop().unwrap();
                    stack.push(g.pow(a, k));
                }
                Op::Mul | Op::Conj | Op::Comm => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(match op {
                        Op::Mul => g.mul(a, b),
                        Op::Conj => g.conj(a, b),
                        _ => g.comm(a, b),
                    });
                }
                Op::Engel(n) => {
                    let b = stack.pop().unwrap();
                    let mut a = stack.pop().unwrap();
                    for _ in 0..n {
                        a = g.comm(a, b);
                    }
                    stack.push(a);
                }
            }
        }
        stack.pop().unwrap()
    }

    pub fn eval(&self, g: &Group, assignment: &[usize]) -> usize {
        let mut stack = Vec::with_capacity(8);
        self.eval_with(g, assignment, &mut stack)
    }
}

fn emit(g: &Group, w: &Word, b: &Bindings, ops: &mut Vec<Op>) -> Result<()> {
    match w {
        Word::Identity => ops.push(Op::Push(g.identity())),
        Word::Var(i) => ops.push(Op::Var(*i)),
        Word::Const(c) => ops.push(Op::Push(resolve(g, c, b)?)),
        Word::Inv(a) => {
            emit(g, a, b, ops)?;
            ops.push(Op::Inv);
        }
        Word::Pow(a, k) => {
            emit(g, a, b, ops)?;
            ops.push(Op::Pow(*k));
        }
        Word::Prod(x, y) | Word::Conj(x, y) | Word::Comm(x, y) | Word::Engel(x, y, _) => {
            emit(g, x, b, ops)?;
            emit(g, y, b, ops)?;
            ops.push(match w {
                Word::Prod(..) => Op::Mul,
                Word::Conj(..) => Op::Conj,
                Word::Comm(..) => Op::Comm,
                Word::Engel(_, _, n) => Op::Engel(*n),
                _ => unreachable!(),
            });
        }
    }
    Ok(())
}

/// Value of `w` under `assignment` (variable `i` ↦ `assignment[i]`).
pub fn evaluate(g: &Group, w: &Word, assignment: &[usize], bindings: &Bindings) -> Result<usize> {
    let c = Compiled::new(g, w, bindings)?;
    if assignment.len() < c.arity {
        return Err(Error::ArityMismatch { needed: c.arity, given: assignment.len() });
    }
    if let Some(&bad) = assignment.iter().find(|&&a| a >= g.order()) {
        return Err(Error::Invalid(format!("element {bad} outside group of order {}", g.order())));
    }
    Ok(c.eval(g, assignment))
}

/// An equation compiled into `lhs · rhs⁻¹`, which is the identity exactly on
/// solutions.
#[derive(Clone, Debug)]
pub struct CompiledEquation {
    lhs: Compiled,
    rhs: Compiled,
    arity: usize,
}

impl CompiledEquation {
    pub fn new(g: &Group, eq: &Equation, bindings: &Bindings) -> Result<Self> {
        Ok(CompiledEquation {
            lhs: Compiled::new(g, &eq.lhs, bindings)?,
            rhs: Compiled::new(g, &eq.rhs, bindings)?,
            arity: eq.arity(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn holds_with(&self, g: &Group, assignment: &[usize], stack: &mut Vec<usize>) -> bool {
        self.lhs.eval_with(g, assignment, stack) == self.rhs.eval_with(g, assignment, stack)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::{catalog, catalog_upto};
    use crate::word::parse_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_identities() {
        let g = catalog("S3").unwrap();
        let none = Bindings::new();
        for a in 0..6 {
            assert_eq!(evaluate(&g, &parse_word("[x1,x1]").unwrap(), &[a], &none).unwrap(), g.identity());
            assert_eq!(evaluate(&g, &parse_word("x1^0").unwrap(), &[a], &none).unwrap(), g.identity());
        }
    }

    #[test]
    fn s3_commutator_of_transpositions() {
        let g = catalog("S3").unwrap();
        let x = g.element("(1 2)").unwrap();
        let y = g.element("(1 3)").unwrap();
        let v = evaluate(&g, &parse_word("[x1,x2]").unwrap(), &[x, y], &Bindings::new()).unwrap();
        // oracle: x⁻¹ y⁻¹ x y by hand
        let direct = g.mul(g.mul(g.mul(g.inv(x), g.inv(y)), x), y);
        assert_eq!(v, direct);
        assert_ne!(v, g.identity());
        assert_eq!(g.element_order(v), 3);
    }

    #[test]
    fn errors() {
        let g = catalog("C4").unwrap();
        let w = parse_word("x1 * g").unwrap();
        assert!(matches!(evaluate(&g, &w, &[1], &Bindings::new()), Err(Error::UnboundConstant(_))));
        let b = Bindings::from([("g".to_string(), 2)]);
        assert_eq!(evaluate(&g, &w, &[1], &b).unwrap(), 3);
        assert!(matches!(
            evaluate(&g, &parse_word("[x1,x2]").unwrap(), &[1], &b),
            Err(Error::ArityMismatch { needed: 2, given: 1 })
        ));
    }

    #[test]
    fn node_semantics_match_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let words = ["x1^-1", "x1 * x2", "x1^3", "x1^-2", "x1^x2", "[x1,x2]", "[x1,x2;2]"];
        let compiled: Vec<Word> = words.iter().map(|w| parse_word(w).unwrap()).collect();
        for g in catalog_upto(24) {
            let n = g.order();
            for _ in 0..1000 {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let none = Bindings::new();
                let ev = |i: usize| evaluate(&g, &compiled[i], &[a, b], &none).unwrap();
                assert_eq!(ev(0), g.inv(a));
                assert_eq!(ev(1), g.mul(a, b));
                assert_eq!(ev(2), g.mul(g.mul(a, a), a));
                assert_eq!(ev(3), g.inv(g.mul(a, a)));
                assert_eq!(ev(4), g.mul(g.mul(g.inv(b), a), b));
                let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
                assert_eq!(ev(5), c);
                assert_eq!(ev(6), g.comm(c, b));
            }
        }
    }

    #[test]
    fn engel_unfolding() {
        let g = catalog("S4").unwrap();
        let none = Bindings::new();
        for n in 2..5u32 {
            let e = Word::engel(Word::Var(0), Word::Var(1), n);
            let unfolded = Word::comm(Word::engel(Word::Var(0), Word::Var(1), n - 1), Word::Var(1));
            for a in 0..24 {
                for b in (0..24).step_by(5) {
                    assert_eq!(evaluate(&g, &e, &[a, b], &none).unwrap(), evaluate(&g, &unfolded, &[a, b], &none).unwrap());
                }
            }
        }
        let one = Word::engel(Word::Var(0), Word::Var(1), 1);
        assert_eq!(evaluate(&g, &one, &[3, 7], &none).unwrap(), g.comm(3, 7));
    }
}
