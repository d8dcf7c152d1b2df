//! Symbolic calculus for localizations presented by generators and formal
//! inverses, with a strict two-rule rewriting system.
//!
//! Elements are polynomials over a finite base ring in noncommuting formal
//! inverse symbols `x_s`: each monomial is a leading ring coefficient
//! followed by a tail word of `x_s` letters and interior ring constants.
//! Canonical form folds adjacent constants through the ring's
//! multiplication, drops interior ones, kills monomials containing zero, and
//! merges equal tails by adding coefficients — so equality of polynomials is
//! equality of `BTreeMap`s.
//!
//! Rewriting contracts exactly two patterns, and only when the constant
//! *literally equals* the inverted symbol: `x_s · a_s → 1` and
//! `a_s · x_s → 1`. Strictness is the point: matching up to factorization
//! (`x_s · a_c → a_d` whenever `s·d = c`) looks stronger but is not
//! confluent, because different factorizations of the same constant reach
//! different normal forms. With the strict rules every contraction removes
//! two letters, so reduction terminates, and the only overlaps between
//! redexes inside a word share a single letter and resolve to the same
//! word — the system is confluent *on monomials*, which the tests also
//! confirm empirically under randomized strategies.
//!
//! Sums need one extra care: normal forms are computed term by term and
//! merged only afterwards. Merging eagerly after every contraction is not
//! confluent — in `Z/6`, contracting the second term of
//! `a3·x3 + a3·x3·x3` first merges it into the first as `a4·x3`, where no
//! strict redex remains, while term-wise reduction reaches `a1 + x3`. Both
//! agree in every fraction ring (each contraction preserves evaluation);
//! only the symbolic representative differs. The single-step `contract`
//! operation exposes the eager behaviour deliberately, and a test freezes
//! this exact blocking example.
//!
//! Two-sided invertibility witnesses are searched in the shape the sandwich
//! law provides: if `a·b·a` equals an inverted element `s`, then
//! `b·a·x_s` is a right inverse and `x_s·a·b` a left inverse of `a`; the
//! search space is all `a_c`, `a_c·x_s`, `x_s·a_c`, `x_s` expressions.
//!
//! Over a commutative base the whole calculus is cross-checked against
//! honest fraction rings: evaluation into the localization is invariant
//! under reduction, respects sums and products, and hits every fraction.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::localization::{localize, Localization, LocalizationError};
use crate::ring::{Elem, FiniteRing, RingError};

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("x{0} is not a declared inverse in this presentation")]
    UnknownInverse(usize),
    #[error("zero cannot be declared invertible")]
    ZeroInverted,
    #[error("polynomials belong to different base rings")]
    RingMismatch,
    #[error("redex no longer present in the polynomial")]
    NoSuchRedex,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
}

/// One letter of a monomial tail: a formal inverse or an interior constant.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    /// The formal inverse `x_s` of the ring element `s`.
    Inv(Elem),
    /// A ring constant appearing after at least one inverse symbol.
    Const(Elem),
}

/// A polynomial in formal inverses over a finite ring, kept canonical at all
/// times. Keys are tail words (empty, or starting with an inverse letter,
/// with no adjacent constants and no interior `0` or `1`); values are the
/// leading coefficients, never zero.
#[derive(Clone, PartialEq)]
pub struct FreePoly {
    ring: FiniteRing,
    terms: BTreeMap<Vec<Letter>, Elem>,
}

/// Fold a letter sequence into `(leading coefficient, canonical tail)`.
/// Returns `None` when a zero constant annihilates the monomial.
fn canonical_word(
    ring: &FiniteRing,
    letters: impl IntoIterator<Item = Letter>,
) -> Option<(Elem, Vec<Letter>)> {
    let mut word: Vec<Letter> = Vec::new();
    for letter in letters {
        match letter {
            Letter::Inv(s) => word.push(Letter::Inv(s)),
            Letter::Const(c) => {
                let folded = match word.last() {
                    Some(&Letter::Const(d)) => {
                        word.pop();
                        ring.mul(d, c)
                    }
                    _ => c,
                };
                if folded == ring.zero() {
                    return None;
                }
                if folded != ring.one() {
                    word.push(Letter::Const(folded));
                }
            }
        }
    }
    match word.first() {
        Some(&Letter::Const(c)) => Some((c, word[1..].to_vec())),
        _ => Some((ring.one(), word)),
    }
}

impl FreePoly {
    pub fn zero(ring: &FiniteRing) -> Self {
        FreePoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &FiniteRing, a: Elem) -> Result<Self, RewriteError> {
        ring.check_elem(a)?;
        let mut poly = Self::zero(ring);
        poly.insert(a, Vec::new());
        Ok(poly)
    }

    pub fn one(ring: &FiniteRing) -> Self {
        Self::constant(ring, ring.one()).expect("1 is an element")
    }

    pub fn int(ring: &FiniteRing, k: i64) -> Self {
        Self::constant(ring, ring.int_embed(k)).expect("integer image is an element")
    }

    pub fn inverse_symbol(ring: &FiniteRing, s: Elem) -> Result<Self, RewriteError> {
        ring.check_elem(s)?;
        let mut poly = Self::zero(ring);
        poly.insert(ring.one(), vec![Letter::Inv(s)]);
        Ok(poly)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, Elem)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()) == Some(&self.ring.one())
    }

    /// Highest number of inverse letters in any single monomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|t| t.iter().filter(|l| matches!(l, Letter::Inv(_))).count())
            .max()
            .unwrap_or(0)
    }

    /// Total letters over all monomials, counting the leading coefficient.
    pub fn letter_count(&self) -> usize {
        self.terms.keys().map(|t| t.len() + 1).sum()
    }

    fn insert(&mut self, coeff: Elem, tail: Vec<Letter>) {
        if coeff == self.ring.zero() {
            return;
        }
        let entry = self.terms.entry(tail);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.add(*o.get(), coeff);
                if sum == self.ring.zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), RewriteError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RewriteError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RewriteError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (tail, coeff) in &other.terms {
            out.insert(*coeff, tail.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (tail, coeff) in &self.terms {
            out.insert(self.ring.neg(*coeff), tail.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RewriteError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RewriteError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let letters = std::iter::once(Letter::Const(*c1))
                    .chain(t1.iter().copied())
                    .chain(std::iter::once(Letter::Const(*c2)))
                    .chain(t2.iter().copied());
                if let Some((coeff, tail)) = canonical_word(&self.ring, letters) {
                    out.insert(coeff, tail);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePoly({self} over {})", self.ring.label())
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(tail, coeff)| {
                let mut parts: Vec<String> = Vec::new();
                if *coeff != self.ring.one() || tail.is_empty() {
                    parts.push(format!("a{}", coeff.0));
                }
                for letter in tail {
                    match letter {
                        Letter::Inv(s) => parts.push(format!("x{}", s.0)),
                        Letter::Const(c) => parts.push(format!("a{}", c.0)),
                    }
                }
                parts.join("*")
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Contractible positions within one monomial: `None` is the boundary pair
/// (leading coefficient against a first inverse letter), `Some(i)` a pair
/// inside the tail.
fn word_redexes(coeff: Elem, tail: &[Letter]) -> Vec<Option<usize>> {
    let mut out = Vec::new();
    if let Some(&Letter::Inv(s)) = tail.first() {
        if coeff == s {
            out.push(None);
        }
    }
    for i in 0..tail.len().saturating_sub(1) {
        let matched = match (tail[i], tail[i + 1]) {
            (Letter::Inv(s), Letter::Const(c)) => c == s,
            (Letter::Const(c), Letter::Inv(s)) => c == s,
            _ => false,
        };
        if matched {
            out.push(Some(i));
        }
    }
    out
}

/// Contract one pair in one monomial, re-canonicalizing the word. `None`
/// means folding annihilated the monomial.
fn word_contract(
    ring: &FiniteRing,
    coeff: Elem,
    tail: &[Letter],
    position: Option<usize>,
) -> Option<(Elem, Vec<Letter>)> {
    let letters: Vec<Letter> = match position {
        None => tail[1..].to_vec(),
        Some(i) => std::iter::once(Letter::Const(coeff))
            .chain(tail[..i].iter().copied())
            .chain(tail[i + 2..].iter().copied())
            .collect(),
    };
    canonical_word(ring, letters)
}

/// A redex: one contractible pair inside one monomial of a polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Redex {
    /// The tail word of the monomial the redex lives in.
    pub tail: Vec<Letter>,
    /// Position of the pair within the tail; `None` means the boundary pair
    /// (the leading coefficient against the first inverse letter).
    pub position: Option<usize>,
}

/// All contractible pairs, in deterministic order (terms in canonical
/// order, boundary first, then left to right).
pub fn redexes(poly: &FreePoly) -> Vec<Redex> {
    let mut out = Vec::new();
    for (tail, coeff) in poly.terms() {
        for position in word_redexes(coeff, tail) {
            out.push(Redex {
                tail: tail.clone(),
                position,
            });
        }
    }
    out
}

/// Contract one redex, merging the result into the polynomial immediately.
///
/// This is the single-step demonstration operation. Because the contracted
/// monomial merges with the other terms right away, arbitrary interleavings
/// of `contract` across different terms can block in a state that term-wise
/// reduction would pass through — evaluation is preserved either way, but
/// for canonical normal forms use [`reduce`].
pub fn contract(poly: &FreePoly, redex: &Redex) -> Result<FreePoly, RewriteError> {
    let ring = poly.ring().clone();
    let Some(&coeff) = poly.terms.get(&redex.tail) else {
        return Err(RewriteError::NoSuchRedex);
    };
    let valid = match redex.position {
        None => matches!(redex.tail.first(), Some(&Letter::Inv(s)) if coeff == s),
        Some(i) => {
            i + 1 < redex.tail.len()
                && matches!(
                    (redex.tail[i], redex.tail[i + 1]),
                    (Letter::Inv(s), Letter::Const(c)) | (Letter::Const(c), Letter::Inv(s))
                        if c == s
                )
        }
    };
    if !valid {
        return Err(RewriteError::NoSuchRedex);
    }
    let mut out = poly.clone();
    out.terms.remove(&redex.tail);
    if let Some((c, tail)) = word_contract(&ring, coeff, &redex.tail, redex.position) {
        out.insert(c, tail);
    }
    Ok(out)
}

/// Resource limits for reduction.
#[derive(Copy, Clone, Debug)]
pub struct Budget {
    pub max_degree: usize,
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 12,
            max_steps: 10_000,
        }
    }
}

/// Why reduction stopped.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Halt {
    /// No redex remains: the result is the normal form.
    Normal,
    /// The step budget ran out first.
    StepBudget,
    /// The input exceeded the degree budget; nothing was attempted.
    DegreeBudget,
}

pub struct ReduceOutcome {
    pub poly: FreePoly,
    pub steps: usize,
    pub halt: Halt,
}

/// Reduce to normal form under the strict rules, within the budget: each
/// monomial is normalized independently (leftmost pair first), and the
/// normal forms are merged into one canonical sum at the end. Every
/// contraction removes two letters, so this always terminates; the budgets
/// exist to make resource use an explicit contract.
pub fn reduce(poly: &FreePoly, budget: &Budget) -> ReduceOutcome {
    if poly.degree() > budget.max_degree {
        return ReduceOutcome {
            poly: poly.clone(),
            steps: 0,
            halt: Halt::DegreeBudget,
        };
    }
    let ring = poly.ring().clone();
    let mut out = FreePoly::zero(&ring);
    let mut steps = 0;
    for (index, (tail, coeff)) in poly.terms.iter().enumerate() {
        let mut c = *coeff;
        let mut t = tail.clone();
        loop {
            let positions = word_redexes(c, &t);
            let Some(&first) = positions.first() else {
                out.insert(c, t);
                break;
            };
            if steps >= budget.max_steps {
                // Park this term as it stands plus everything untouched.
                out.insert(c, t);
                for (rest_tail, rest_coeff) in poly.terms.iter().skip(index + 1) {
                    out.insert(*rest_coeff, rest_tail.clone());
                }
                return ReduceOutcome {
                    poly: out,
                    steps,
                    halt: Halt::StepBudget,
                };
            }
            steps += 1;
            match word_contract(&ring, c, &t, first) {
                Some((nc, nt)) => {
                    c = nc;
                    t = nt;
                }
                None => break, // the monomial folded to zero
            }
        }
    }
    ReduceOutcome {
        poly: out,
        steps,
        halt: Halt::Normal,
    }
}

/// A localization presented by a set of elements to invert formally.
pub struct LocalizationPresentation {
    pub ring: FiniteRing,
    pub inverted: BTreeSet<Elem>,
}

/// A two-sided invertibility certificate for one element: expressions whose
/// products with the element reduce to 1 on the matching side.
pub struct InverseWitness {
    pub left: FreePoly,
    pub right: FreePoly,
}

impl LocalizationPresentation {
    pub fn new(ring: &FiniteRing, inverted: BTreeSet<Elem>) -> Result<Self, RewriteError> {
        for &s in &inverted {
            ring.check_elem(s)?;
            if s == ring.zero() {
                return Err(RewriteError::ZeroInverted);
            }
        }
        Ok(LocalizationPresentation {
            ring: ring.clone(),
            inverted,
        })
    }

    fn check_symbols(&self, poly: &FreePoly) -> Result<(), RewriteError> {
        for (tail, _) in poly.terms() {
            for letter in tail {
                if let Letter::Inv(s) = letter {
                    if !self.inverted.contains(s) {
                        return Err(RewriteError::UnknownInverse(s.0));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parse an expression in the grammar
    /// `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
    /// `factor := '-' factor | INT | aK | xK | '(' expr ')'`,
    /// where `aK` is the ring element with index `K` and `xK` the formal
    /// inverse of the element with index `K`.
    pub fn expression(&self, src: &str) -> Result<FreePoly, RewriteError> {
        let tokens = tokenize(src)?;
        let mut parser = Parser {
            pres: self,
            tokens,
            pos: 0,
        };
        let poly = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(RewriteError::Parse(format!(
                "unexpected trailing token at {}",
                parser.pos
            )));
        }
        Ok(poly)
    }

    /// Search for a two-sided invertibility witness for `a` among the
    /// sandwich-shaped candidates. Returns the first (in deterministic
    /// order) left and right expressions whose products with `a` reduce
    /// to 1.
    pub fn invertibility_witness(&self, a: Elem) -> Result<Option<InverseWitness>, RewriteError> {
        self.ring.check_elem(a)?;
        let budget = Budget::default();
        let target = FreePoly::constant(&self.ring, a)?;
        let mut candidates: Vec<FreePoly> = Vec::new();
        for c in self.ring.elements() {
            candidates.push(FreePoly::constant(&self.ring, c)?);
        }
        for &s in &self.inverted {
            let x = FreePoly::inverse_symbol(&self.ring, s)?;
            candidates.push(x.clone());
            for c in self.ring.elements() {
                let con = FreePoly::constant(&self.ring, c)?;
                candidates.push(con.mul(&x)?);
                candidates.push(x.mul(&con)?);
            }
        }
        let right = candidates.iter().find(|r| {
            let product = target.mul(r).expect("same ring");
            reduce(&product, &budget).poly.is_one()
        });
        let left = candidates.iter().find(|l| {
            let product = l.mul(&target).expect("same ring");
            reduce(&product, &budget).poly.is_one()
        });
        Ok(match (left, right) {
            (Some(l), Some(r)) => Some(InverseWitness {
                left: l.clone(),
                right: r.clone(),
            }),
            _ => None,
        })
    }

    /// Evaluate an expression into an honest fraction ring whose
    /// denominator set contains every declared inverse.
    pub fn evaluate(&self, poly: &FreePoly, loc: &Localization) -> Result<Elem, RewriteError> {
        if poly.ring() != &self.ring || loc.ring != self.ring {
            return Err(RewriteError::RingMismatch);
        }
        self.check_symbols(poly)?;
        let fractions = &loc.fractions;
        let mut acc = fractions.zero();
        for (tail, coeff) in poly.terms() {
            let mut value = loc.to_fractions.apply(coeff);
            for letter in tail {
                let factor = match letter {
                    Letter::Const(c) => loc.to_fractions.apply(*c),
                    Letter::Inv(s) => {
                        let image = loc.to_fractions.apply(*s);
                        fractions
                            .inverse(image)
                            .ok_or(RewriteError::UnknownInverse(s.0))?
                    }
                };
                value = fractions.mul(value, factor);
            }
            acc = fractions.add(acc, value);
        }
        Ok(acc)
    }

    /// Cross-check the symbolic calculus against the honest fraction ring of
    /// a commutative base: evaluation must be invariant under reduction,
    /// respect sums and products, and hit every fraction.
    pub fn commutative_consistency(&self) -> Result<ConsistencyReport, RewriteError> {
        self.ring.require_commutative().map_err(RewriteError::Ring)?;
        let loc = localize(&self.ring, &self.inverted)?;
        let budget = Budget::default();

        // A deterministic expression family: constants, single fractions,
        // and length-two alternations.
        let mut family: Vec<FreePoly> = Vec::new();
        for a in self.ring.elements() {
            family.push(FreePoly::constant(&self.ring, a)?);
        }
        for &s in &self.inverted {
            let x = FreePoly::inverse_symbol(&self.ring, s)?;
            family.push(x.clone());
            for a in self.ring.elements() {
                let con = FreePoly::constant(&self.ring, a)?;
                family.push(con.mul(&x)?);
                for &t in &self.inverted {
                    let xt = FreePoly::inverse_symbol(&self.ring, t)?;
                    family.push(con.mul(&x)?.mul(&FreePoly::one(&self.ring))?.mul(&xt)?);
                }
            }
        }

        let mut reduction_invariant = true;
        for e in &family {
            let reduced = reduce(e, &budget);
            if reduced.halt != Halt::Normal
                || self.evaluate(e, &loc)? != self.evaluate(&reduced.poly, &loc)?
            {
                reduction_invariant = false;
            }
        }

        let mut homomorphic = true;
        for e1 in &family {
            for e2 in &family {
                let sum = self.evaluate(&e1.add(e2)?, &loc)?;
                if sum != loc.fractions.add(self.evaluate(e1, &loc)?, self.evaluate(e2, &loc)?) {
                    homomorphic = false;
                }
                let product = self.evaluate(&e1.mul(e2)?, &loc)?;
                if product
                    != loc
                        .fractions
                        .mul(self.evaluate(e1, &loc)?, self.evaluate(e2, &loc)?)
                {
                    homomorphic = false;
                }
            }
        }

        let image: BTreeSet<Elem> = family
            .iter()
            .map(|e| self.evaluate(e, &loc))
            .collect::<Result<_, _>>()?;
        let surjective = image.len() == loc.fractions.order();

        Ok(ConsistencyReport {
            reduction_invariant,
            homomorphic,
            surjective,
            fraction_ring_order: loc.fractions.order(),
        })
    }
}

/// Outcome of the commutative cross-check.
pub struct ConsistencyReport {
    pub reduction_invariant: bool,
    pub homomorphic: bool,
    pub surjective: bool,
    pub fraction_ring_order: usize,
}

impl ConsistencyReport {
    pub fn holds(&self) -> bool {
        self.reduction_invariant && self.homomorphic && self.surjective
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Plus,
    Minus,
    Star,
    Open,
    Close,
    Int(i64),
    Const(usize),
    Inv(usize),
}

fn tokenize(src: &str) -> Result<Vec<Token>, RewriteError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            'a' | 'x' => {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(RewriteError::Parse(format!(
                        "expected an index after '{c}'"
                    )));
                }
                let idx: usize = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| RewriteError::Parse("index overflow".into()))?;
                tokens.push(if c == 'a' {
                    Token::Const(idx)
                } else {
                    Token::Inv(idx)
                });
                i = end;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                let mut end = i;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let value: i64 = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| RewriteError::Parse("integer overflow".into()))?;
                tokens.push(Token::Int(value));
                i = end;
            }
            other => {
                return Err(RewriteError::Parse(format!(
                    "unexpected character '{other}'"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    pres: &'a LocalizationPresentation,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<FreePoly, RewriteError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreePoly, RewriteError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreePoly, RewriteError> {
        let ring = &self.pres.ring;
        match self.peek().cloned() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Token::Int(k)) => {
                self.pos += 1;
                Ok(FreePoly::int(ring, k))
            }
            Some(Token::Const(idx)) => {
                self.pos += 1;
                FreePoly::constant(ring, Elem(idx))
            }
            Some(Token::Inv(idx)) => {
                self.pos += 1;
                let s = Elem(idx);
                ring.check_elem(s)?;
                if !self.pres.inverted.contains(&s) {
                    return Err(RewriteError::UnknownInverse(idx));
                }
                FreePoly::inverse_symbol(ring, s)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(RewriteError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(RewriteError::Parse(format!(
                "expected a factor, found {other:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn pres(n: usize, inverted: &[usize]) -> LocalizationPresentation {
        LocalizationPresentation::new(&z(n), inverted.iter().map(|&i| Elem(i)).collect())
            .unwrap()
    }

    #[test]
    fn canonical_form_folds_constants_and_kills_zero() {
        let p = pres(12, &[5]);
        // Adjacent constants fold through the ring: 3·4 = 0 kills the term.
        assert!(p.expression("a3 * a4").unwrap().is_zero());
        // Interior 1 disappears.
        let lhs = p.expression("a2 * x5 * a1 * x5").unwrap();
        let rhs = p.expression("a2 * x5 * x5").unwrap();
        assert_eq!(lhs, rhs);
        // Equal tails merge coefficients.
        let sum = p.expression("a3 * x5 + a4 * x5").unwrap();
        assert_eq!(sum, p.expression("a7 * x5").unwrap());
        // Integer literals embed through the unique map from the integers.
        assert_eq!(p.expression("7").unwrap(), p.expression("a7").unwrap());
    }

    #[test]
    fn strict_rules_contract_only_exact_matches() {
        let p = pres(6, &[2]);
        let budget = Budget::default();
        let now_one = |src: &str| {
            let outcome = reduce(&p.expression(src).unwrap(), &budget);
            assert_eq!(outcome.halt, Halt::Normal, "{src}");
            assert!(outcome.poly.is_one(), "{src} reduced to {}", outcome.poly);
        };
        now_one("x2 * a2");
        now_one("a2 * x2");
        // 4 = 2·2 in Z/6, but the strict rule does not factor constants:
        // x2·a4 is already normal.
        let stuck = reduce(&p.expression("x2 * a4").unwrap(), &budget);
        assert_eq!(stuck.steps, 0);
        assert_eq!(stuck.poly.to_string(), "x2*a4");
        // Canonicalization itself folds a2*a2 before rewriting sees it.
        let folded = reduce(&p.expression("x2 * a2 * a2").unwrap(), &budget);
        assert_eq!(folded.poly.to_string(), "x2*a4");
    }

    #[test]
    fn reduction_steps_are_counted_and_bounded_by_letters() {
        let p = pres(6, &[2, 5]);
        let e = p.expression("a2 * x2 * a5 * x5 * a5 * x5").unwrap();
        let before = e.letter_count();
        let outcome = reduce(&e, &Budget::default());
        assert_eq!(outcome.halt, Halt::Normal);
        assert!(outcome.poly.is_one());
        assert_eq!(outcome.steps, 3);
        assert!(outcome.steps <= before);
    }

    #[test]
    fn degree_budget_rejects_oversized_input() {
        let p = pres(6, &[5]);
        let x = p.expression("x5").unwrap();
        let mut tall = FreePoly::one(&z(6));
        for _ in 0..13 {
            tall = tall.mul(&x).unwrap();
        }
        assert_eq!(tall.degree(), 13);
        let outcome = reduce(&tall, &Budget::default());
        assert_eq!(outcome.halt, Halt::DegreeBudget);
        assert_eq!(outcome.steps, 0);
    }

    #[test]
    fn step_budget_halts_early() {
        let p = pres(6, &[2]);
        let e = p.expression("a2 * x2 * a2 * x2").unwrap();
        let outcome = reduce(&e, &Budget { max_degree: 12, max_steps: 1 });
        assert_eq!(outcome.halt, Halt::StepBudget);
        assert_eq!(outcome.steps, 1);
    }

    #[test]
    fn random_contraction_orders_reach_the_same_normal_form() {
        let ring = z(6);
        let symbols = [Elem(2), Elem(3), Elem(4), Elem(5)];
        let mut rng = ChaCha8Rng::seed_from_u64(0xF5CE);
        let budget = Budget::default();
        for _ in 0..1000 {
            // Random polynomial: up to 3 terms of up to 6 letters.
            let mut poly = FreePoly::zero(&ring);
            for _ in 0..rng.gen_range(1..=3) {
                let mut letters = Vec::new();
                for _ in 0..rng.gen_range(0..=6) {
                    if rng.gen_bool(0.5) {
                        letters.push(Letter::Inv(symbols[rng.gen_range(0..symbols.len())]));
                    } else {
                        letters.push(Letter::Const(Elem(rng.gen_range(0..6))));
                    }
                }
                if let Some((c, tail)) = super::canonical_word(&ring, letters) {
                    let coeff = ring.mul(Elem(rng.gen_range(1..6)), c);
                    let mut term = FreePoly::zero(&ring);
                    term.insert(coeff, tail);
                    poly = poly.add(&term).unwrap();
                }
            }
            let deterministic = reduce(&poly, &budget);
            assert_eq!(deterministic.halt, Halt::Normal);
            // Randomized strategy: contract arbitrary pairs within each
            // monomial until stuck, merging only at the end.
            let mut random_sum = FreePoly::zero(&ring);
            for (tail, coeff) in poly.terms() {
                let mut c = coeff;
                let mut t = tail.clone();
                let died = loop {
                    let positions = super::word_redexes(c, &t);
                    if positions.is_empty() {
                        break false;
                    }
                    let pick = positions[rng.gen_range(0..positions.len())];
                    match super::word_contract(&ring, c, &t, pick) {
                        Some((nc, nt)) => {
                            c = nc;
                            t = nt;
                        }
                        None => break true,
                    }
                };
                if !died {
                    random_sum.insert(c, t);
                }
            }
            assert_eq!(
                random_sum, deterministic.poly,
                "orders disagree on {poly}"
            );
        }
    }

    #[test]
    fn eager_cross_term_merging_can_block_but_preserves_evaluation() {
        // Frozen counterexample: contracting the longer term of
        // a3·x3 + a3·x3·x3 first merges it into the shorter one as a4·x3,
        // where no strict redex remains; term-wise reduction reaches
        // a1 + x3. Both evaluate identically in the fraction ring.
        let p = pres(6, &[3]);
        let poly = p.expression("a3*x3 + a3*x3*x3").unwrap();
        let normal = reduce(&poly, &Budget::default());
        assert_eq!(normal.poly.to_string(), "a1 + x3");

        let all = redexes(&poly);
        // The boundary redex of the longer term is listed after the two of
        // the shorter one... find it explicitly.
        let longer = all
            .iter()
            .find(|r| r.tail.len() == 2 && r.position.is_none())
            .unwrap();
        let blocked = contract(&poly, longer).unwrap();
        assert_eq!(blocked.to_string(), "a4*x3");
        assert!(redexes(&blocked).is_empty());
        assert_ne!(blocked, normal.poly);

        let loc = localize(&z(6), &[Elem(3)].into_iter().collect()).unwrap();
        let eval_blocked = p.evaluate(&blocked, &loc).unwrap();
        let eval_normal = p.evaluate(&normal.poly, &loc).unwrap();
        let eval_original = p.evaluate(&poly, &loc).unwrap();
        assert_eq!(eval_blocked, eval_normal);
        assert_eq!(eval_blocked, eval_original);
    }

    #[test]
    fn inverse_count_never_increases_under_reduction() {
        let ring = z(12);
        let symbols = [Elem(5), Elem(7), Elem(11)];
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
        let count = |p: &FreePoly| {
            p.terms()
                .map(|(t, _)| t.iter().filter(|l| matches!(l, Letter::Inv(_))).count())
                .sum::<usize>()
        };
        for _ in 0..300 {
            let mut letters = Vec::new();
            for _ in 0..rng.gen_range(0..=8) {
                if rng.gen_bool(0.6) {
                    letters.push(Letter::Inv(symbols[rng.gen_range(0..symbols.len())]));
                } else {
                    letters.push(Letter::Const(Elem(rng.gen_range(0..12))));
                }
            }
            let mut poly = FreePoly::zero(&ring);
            if let Some((c, tail)) = super::canonical_word(&ring, letters) {
                poly.insert(c, tail);
            }
            let outcome = reduce(&poly, &Budget::default());
            assert!(count(&outcome.poly) <= count(&poly));
        }
    }

    #[test]
    fn sandwich_witnesses_certify_two_sided_invertibility() {
        // Commutative: 2·2 = 4, so with 4 inverted, 2 gets the witness
        // a2·x4 on both sides.
        let p = pres(6, &[4]);
        let witness = p.invertibility_witness(Elem(2)).unwrap().unwrap();
        let budget = Budget::default();
        let two = FreePoly::constant(&z(6), Elem(2)).unwrap();
        assert!(reduce(&two.mul(&witness.right).unwrap(), &budget).poly.is_one());
        assert!(reduce(&witness.left.mul(&two).unwrap(), &budget).poly.is_one());
        // 3 has no witness once only 4 is inverted: 3·c·x4 and la3 forms
        // never reduce to 1.
        assert!(p.invertibility_witness(Elem(3)).unwrap().is_none());
    }

    #[test]
    fn idempotent_in_a_noncommutative_ring_gets_a_witness_when_self_inverted() {
        // In T₂(F₂), e00 (index 1) is idempotent: e00·e00·e00 = e00, so
        // inverting it formally yields witnesses on both sides.
        let tri = FiniteRing::upper_triangular(&z(2), 2).unwrap();
        let p = LocalizationPresentation::new(&tri, [Elem(1)].into_iter().collect()).unwrap();
        let witness = p.invertibility_witness(Elem(1)).unwrap().unwrap();
        let budget = Budget::default();
        let e = FreePoly::constant(&tri, Elem(1)).unwrap();
        assert!(reduce(&e.mul(&witness.right).unwrap(), &budget).poly.is_one());
        assert!(reduce(&witness.left.mul(&e).unwrap(), &budget).poly.is_one());
        // The strictly upper nilpotent e01 (index 2) gets none.
        assert!(p.invertibility_witness(Elem(2)).unwrap().is_none());
    }

    #[test]
    fn units_get_constant_witnesses_without_any_inversion() {
        let p = pres(6, &[]);
        let witness = p.invertibility_witness(Elem(5)).unwrap().unwrap();
        assert_eq!(witness.right, FreePoly::constant(&z(6), Elem(5)).unwrap());
        assert!(p.invertibility_witness(Elem(2)).unwrap().is_none());
    }

    #[test]
    fn evaluation_into_fractions_is_consistent_on_z6() {
        let p = pres(6, &[2]);
        let report = p.commutative_consistency().unwrap();
        assert!(report.holds());
        assert_eq!(report.fraction_ring_order, 3);
    }

    #[test]
    fn evaluation_into_fractions_is_consistent_on_z12_and_z30() {
        for (n, inverted) in [(12usize, vec![2usize]), (30, vec![3]), (30, vec![2, 5])] {
            let p = pres(n, &inverted);
            let report = p.commutative_consistency().unwrap();
            assert!(report.holds(), "Z/{n} inverting {inverted:?}");
        }
    }

    #[test]
    fn parser_round_trips_through_display() {
        let p = pres(12, &[5, 7]);
        for src in [
            "a3 * x5 * a5",
            "a3 + 2*x7 - 1",
            "x5 * x7 * a11 + a6",
            "-(a2 * x5) + a2 * x5",
            "(a3 + a4) * x7",
        ] {
            let parsed = p.expression(src).unwrap();
            let rendered = parsed.to_string();
            assert_eq!(p.expression(&rendered).unwrap(), parsed, "{src} → {rendered}");
        }
    }

    #[test]
    fn parser_rejects_bad_input() {
        let p = pres(6, &[2]);
        assert!(matches!(
            p.expression("x3"),
            Err(RewriteError::UnknownInverse(3))
        ));
        assert!(matches!(p.expression("a9"), Err(RewriteError::Ring(_))));
        assert!(matches!(p.expression("a2 *"), Err(RewriteError::Parse(_))));
        assert!(matches!(p.expression("(a2"), Err(RewriteError::Parse(_))));
        assert!(matches!(p.expression("y2"), Err(RewriteError::Parse(_))));
        assert!(matches!(
            LocalizationPresentation::new(&z(6), [Elem(0)].into_iter().collect()),
            Err(RewriteError::ZeroInverted)
        ));
    }

    #[test]
    fn zero_and_negation_behave_like_ring_operations() {
        let p = pres(6, &[2]);
        let e = p.expression("a4 * x2 + a1").unwrap();
        assert!(e.sub(&e).unwrap().is_zero());
        assert_eq!(e.neg().neg(), e);
        let doubled = e.add(&e).unwrap();
        assert_eq!(doubled, p.expression("a2 * x2 + a2").unwrap());
    }
}
