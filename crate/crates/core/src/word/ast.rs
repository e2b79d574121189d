use std::collections::BTreeSet;
use std::fmt;

/// A group word. Variables are 0-based (`x1` in text is `Var(0)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Identity,
    Var(usize),
    /// Named constant, bound at evaluation time. Names starting with `#`
    /// are element literals resolved against the group itself.
    Const(String),
    Inv(Box<Word>),
    Prod(Box<Word>, Box<Word>),
    Pow(Box<Word>, i64),
    /// `Conj(u, v) = v⁻¹ u v`
    Conj(Box<Word>, Box<Word>),
    /// `Comm(u, v) = u⁻¹ v⁻¹ u v`
    Comm(Box<Word>, Box<Word>),
    /// `Engel(u, v, n) = [u, v, …, v]` with `n` copies of `v`.
    Engel(Box<Word>, Box<Word>, u32),
}

impl Word {
    pub fn var(i: usize) -> Word {
        Word::Var(i)
    }

    pub fn constant(name: impl Into<String>) -> Word {
        Word::Const(name.into())
    }

    pub fn inv(self) -> Word {
        Word::Inv(Box::new(self))
    }

    pub fn mul(self, rhs: Word) -> Word {
        Word::Prod(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, k: i64) -> Word {
        Word::Pow(Box::new(self), k)
    }

    pub fn conj(self, by: Word) -> Word {
        Word::Conj(Box::new(self), Box::new(by))
    }

    pub fn comm(a: Word, b: Word) -> Word {
        Word::Comm(Box::new(a), Box::new(b))
    }

    pub fn engel(a: Word, b: Word, n: u32) -> Word {
        Word::Engel(Box::new(a), Box::new(b), n)
    }

    /// Left-normed commutator `[w₀, w₁, …, w_k]`.
    pub fn left_normed(words: impl IntoIterator<Item = Word>) -> Word {
        let mut it = words.into_iter();
        let first = it.next().unwrap_or(Word::Identity);
        it.fold(first, Word::comm)
    }

    /// Left-associated product; the identity for an empty list.
    pub fn product(words: impl IntoIterator<Item = Word>) -> Word {
        words.into_iter().reduce(Word::mul).unwrap_or(Word::Identity)
    }

    /// Inverse that collapses double inversion.
    pub fn inverse(&self) -> Word {
        match self {
            Word::Inv(w) => (**w).clone(),
            Word::Identity => Word::Identity,
            w => w.clone().inv(),
        }
    }

    /// Variable indices occurring in the word.
    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.visit(&mut |w| {
            if let Word::Var(i) = w {
                out.insert(*i);
            }
        });
        out
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |w| {
            if let Word::Const(c) = w {
                out.insert(c.clone());
            }
        });
        out
    }

    /// One more than the largest variable index (0 for a constant word).
    pub fn arity(&self) -> usize {
        self.vars().last().map_or(0, |m| m + 1)
    }

    fn visit(&self, f: &mut impl FnMut(&Word)) {
        f(self);
        match self {
            Word::Identity | Word::Var(_) | Word::Const(_) => {}
            Word::Inv(a) | Word::Pow(a, _) => a.visit(f),
            Word::Prod(a, b) | Word::Conj(a, b) | Word::Comm(a, b) | Word::Engel(a, b, _) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Replace every variable by a word.
    pub fn substitute(&self, f: &impl Fn(usize) -> Word) -> Word {
        let sub = |w: &Word| Box::new(w.substitute(f));
        match self {
            Word::Var(i) => f(*i),
            Word::Identity | Word::Const(_) => self.clone(),
            Word::Inv(a) => Word::Inv(sub(a)),
            Word::Pow(a, k) => Word::Pow(sub(a), *k),
            Word::Prod(a, b) => Word::Prod(sub(a), sub(b)),
            Word::Conj(a, b) => Word::Conj(sub(a), sub(b)),
            Word::Comm(a, b) => Word::Comm(sub(a), sub(b)),
            Word::Engel(a, b, n) => Word::Engel(sub(a), sub(b), *n),
        }
    }

    /// Rename variables through `f`.
    pub fn rename(&self, f: &impl Fn(usize) -> usize) -> Word {
        self.substitute(&|i| Word::Var(f(i)))
    }

    /// Unfold Engel nodes into nested commutators.
    pub fn expand_engel(&self) -> Word {
        let e = |w: &Word| w.expand_engel();
        match self {
            Word::Identity | Word::Var(_) | Word::Const(_) => self.clone(),
            Word::Inv(a) => e(a).inv(),
            Word::Pow(a, k) => e(a).pow(*k),
            Word::Prod(a, b) => e(a).mul(e(b)),
            Word::Conj(a, b) => e(a).conj(e(b)),
            Word::Comm(a, b) => Word::comm(e(a), e(b)),
            Word::Engel(a, b, n) => {
                let v = e(b);
                (0..*n).fold(e(a), |acc, _| Word::comm(acc, v.clone()))
            }
        }
    }

    /// Factors of a left-associated product tree (a single factor otherwise).
    pub fn factors(&self) -> Vec<Word> {
        match self {
            Word::Prod(a, b) => {
                let mut out = a.factors();
                out.extend(b.factors());
                out
            }
            Word::Identity => vec![],
            w => vec![w.clone()],
        }
    }

    /// Nesting depth of commutator brackets.
    pub fn comm_depth(&self) -> usize {
        match self {
            Word::Identity | Word::Var(_) | Word::Const(_) => 0,
            Word::Inv(a) | Word::Pow(a, _) => a.comm_depth(),
            Word::Prod(a, b) | Word::Conj(a, b) => a.comm_depth().max(b.comm_depth()),
            Word::Comm(a, b) => 1 + a.comm_depth().max(b.comm_depth()),
            Word::Engel(a, b, n) => *n as usize + a.comm_depth().max(b.comm_depth()),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn is_atom(&self) -> bool {
        matches!(self, Word::Var(_) | Word::Const(_) | Word::Comm(..) | Word::Engel(..))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Postfix base: anything but a product.
        let base = |w: &Word, f: &mut fmt::Formatter<'_>| match w {
            Word::Prod(..) => write!(f, "({w})"),
            _ => write!(f, "{w}"),
        };
        match self {
            Word::Identity => write!(f, "1"),
            Word::Var(i) => write!(f, "x{}", i + 1),
            Word::Const(c) => write!(f, "{c}"),
            Word::Inv(a) => {
                base(a, f)?;
                write!(f, "^-1")
            }
            Word::Pow(a, k) => {
                base(a, f)?;
                write!(f, "^{k}")
            }
            Word::Conj(a, b) => {
                base(a, f)?;
                if b.is_atom() {
                    write!(f, "^{b}")
                } else {
                    write!(f, "^({b})")
                }
            }
            Word::Prod(a, b) => match **b {
                Word::Prod(..) => write!(f, "{a} * ({b})"),
                _ => write!(f, "{a} * {b}"),
            },
            Word::Comm(a, b) => write!(f, "[{a}, {b}]"),
            Word::Engel(a, b, n) => write!(f, "[{a}, {b}; {n}]"),
        }
    }
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Equation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Equation { lhs, rhs }
    }

    /// Number of variable slots: one more than the largest index used.
    pub fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut c = self.lhs.constants();
        c.extend(self.rhs.constants());
        c
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
