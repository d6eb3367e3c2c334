//! Presented noncommutative algebras and their elements.
//!
//! An algebra is given by generators and rewrite rules `lhs -> Σ c_k w_k` whose
//! right-hand words are all smaller than `lhs` in the degree-lexicographic order
//! (generators compare by id). Reduction therefore terminates, and when the rule
//! set is confluent the irreducible ("normal") words form a linear basis.
//!
//! Tensor products `L ⊗ R` are presented with the generators of `L` followed by
//! those of `R`, the relations of both factors and the commutation rules
//! `r·l -> l·r`; their normal words are `(normal word of L)·(normal word of R)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::commpoly::{self, CommPoly};
use crate::error::{Error, Result};
use crate::exactnum::CyclotomicNumber;
use crate::expr::{self, Expr, Ident, ParseError};

pub type GenId = u16;

/// A word in the generators. Ordered degree-lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<GenId>) -> Self {
        Word(letters)
    }

    pub fn letter(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl From<&[GenId]> for Word {
    fn from(v: &[GenId]) -> Self {
        Word(v.to_vec())
    }
}

/// An oriented relation `lhs -> Σ coeff · word`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Vec<(Word, CommPoly)>,
}

impl RewriteRule {
    pub fn new(lhs: Word, rhs: Vec<(Word, CommPoly)>) -> Self {
        RewriteRule { lhs, rhs }
    }
}

#[derive(Debug, Clone)]
struct TensorSplit {
    left: Arc<PresentedAlgebra>,
    right: Arc<PresentedAlgebra>,
}

#[derive(Debug)]
pub struct PresentedAlgebra {
    name: String,
    generators: Vec<String>,
    rules: Vec<RewriteRule>,
    order: u32,
    tensor: Option<TensorSplit>,
    basis_names: Option<Arc<[String]>>,
    lhs_index: HashMap<Vec<GenId>, usize>,
    lhs_lengths: Vec<usize>,
}

impl PresentedAlgebra {
    /// Builds a presentation after checking that every rule strictly decreases the term order.
    ///
    /// Confluence is not checked here; see [`PresentedAlgebra::check_confluence`].
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        rules: Vec<RewriteRule>,
        order: u32,
    ) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(name.into(), generators, rules, order, None)?))
    }

    /// Builds a presentation and rejects it unless the rule set is confluent.
    pub fn new_confluent(
        name: impl Into<String>,
        generators: Vec<String>,
        rules: Vec<RewriteRule>,
        order: u32,
    ) -> Result<Arc<Self>> {
        let alg = Self::new(name, generators, rules, order)?;
        let report = alg.check_confluence();
        if !report.is_empty() {
            return Err(Error::NotConfluent(report.len()));
        }
        Ok(alg)
    }

    /// The free algebra on the given generators.
    pub fn free(name: impl Into<String>, generators: Vec<String>, order: u32) -> Arc<Self> {
        Self::new(name, generators, Vec::new(), order).expect("free algebras have no rules")
    }

    fn build(
        name: String,
        generators: Vec<String>,
        rules: Vec<RewriteRule>,
        order: u32,
        tensor: Option<TensorSplit>,
    ) -> Result<Self> {
        let ngen = generators.len();
        if ngen > GenId::MAX as usize {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        let mut lhs_index = HashMap::new();
        let mut lhs_lengths = Vec::new();
        for (k, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty() {
                return Err(Error::InvalidRule("empty left-hand side".into()));
            }
            let ids_ok = |w: &Word| w.letters().iter().all(|&g| (g as usize) < ngen);
            if !ids_ok(&rule.lhs) || !rule.rhs.iter().all(|(w, _)| ids_ok(w)) {
                return Err(Error::InvalidRule(format!("rule {k} uses an unknown generator")));
            }
            for (w, c) in &rule.rhs {
                if *w >= rule.lhs {
                    return Err(Error::InvalidRule(format!(
                        "rule {k}: right-hand word is not smaller than the left-hand side"
                    )));
                }
                if c.order() != order {
                    return Err(Error::OrderMismatch(order, c.order()));
                }
            }
            lhs_index.entry(rule.lhs.0.clone()).or_insert(k);
            if !lhs_lengths.contains(&rule.lhs.len()) {
                lhs_lengths.push(rule.lhs.len());
            }
        }
        lhs_lengths.sort_unstable();
        Ok(PresentedAlgebra {
            name,
            generators,
            rules,
            order,
            tensor,
            basis_names: None,
            lhs_index,
            lhs_lengths,
        })
    }

    /// Attaches H-basis names used when rendering `t[i,r]` coefficients.
    pub fn with_basis_names(self: Arc<Self>, names: Arc<[String]>) -> Arc<Self> {
        let mut me = Arc::try_unwrap(self).unwrap_or_else(|a| a.shallow_clone());
        me.basis_names = Some(names);
        Arc::new(me)
    }

    fn shallow_clone(&self) -> Self {
        PresentedAlgebra {
            name: self.name.clone(),
            generators: self.generators.clone(),
            rules: self.rules.clone(),
            order: self.order,
            tensor: self.tensor.clone(),
            basis_names: self.basis_names.clone(),
            lhs_index: self.lhs_index.clone(),
            lhs_lengths: self.lhs_lengths.clone(),
        }
    }

    /// `L ⊗ R`, with `r·l -> l·r` for every right generator `r` and left generator `l`.
    pub fn tensor(left: &Arc<Self>, right: &Arc<Self>) -> Result<Arc<Self>> {
        if left.order != right.order {
            return Err(Error::OrderMismatch(left.order, right.order));
        }
        let offset = left.generators.len() as GenId;
        let mut generators = left.generators.clone();
        generators.extend(right.generators.iter().map(|g| format!("1⊗{g}")));
        let mut rules = left.rules.clone();
        for r in &right.rules {
            let shift = |w: &Word| Word(w.0.iter().map(|g| g + offset).collect());
            rules.push(RewriteRule {
                lhs: shift(&r.lhs),
                rhs: r.rhs.iter().map(|(w, c)| (shift(w), c.clone())).collect(),
            });
        }
        for rg in 0..right.generators.len() as GenId {
            for lg in 0..offset {
                rules.push(RewriteRule {
                    lhs: Word(vec![rg + offset, lg]),
                    rhs: vec![(Word(vec![lg, rg + offset]), CommPoly::one(left.order))],
                });
            }
        }
        let name = format!("({}) ⊗ ({})", left.name, right.name);
        let mut alg = Self::build(
            name,
            generators,
            rules,
            left.order,
            Some(TensorSplit {
                left: left.clone(),
                right: right.clone(),
            }),
        )?;
        alg.basis_names = left.basis_names.clone().or_else(|| right.basis_names.clone());
        Ok(Arc::new(alg))
    }

    pub fn tensor_square(h: &Arc<Self>) -> Result<Arc<Self>> {
        Self::tensor(h, h)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn generator(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == name).map(|i| i as GenId)
    }

    /// The two tensor factors, if this is a tensor presentation.
    pub fn factors(&self) -> Option<(&Arc<Self>, &Arc<Self>)> {
        self.tensor.as_ref().map(|t| (&t.left, &t.right))
    }

    /// Structural equality of presentations.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.order == other.order && self.generators == other.generators && self.rules == other.rules)
    }

    fn find_redex(&self, w: &[GenId]) -> Option<(usize, &RewriteRule)> {
        for pos in 0..w.len() {
            for &len in &self.lhs_lengths {
                if pos + len > w.len() {
                    break;
                }
                if let Some(&k) = self.lhs_index.get(&w[pos..pos + len]) {
                    return Some((pos, &self.rules[k]));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(&w.0).is_none()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&g| g as usize >= self.generators.len()) {
            Some(g) => Err(Error::UnknownGenerator(format!("#{g} in {}", self.name))),
            None => Ok(()),
        }
    }

    /// Reduces a linear combination of words. Words are processed from the largest down,
    /// so every word is visited at most once.
    fn reduce(&self, mut pending: BTreeMap<Word, CommPoly>) -> BTreeMap<Word, CommPoly> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w.0) {
                None => {
                    out.insert(w, c);
                }
                Some((pos, rule)) => {
                    let end = pos + rule.lhs.len();
                    for (rw, rc) in &rule.rhs {
                        let mut v = Vec::with_capacity(w.len() - rule.lhs.len() + rw.len());
                        v.extend_from_slice(&w.0[..pos]);
                        v.extend_from_slice(&rw.0);
                        v.extend_from_slice(&w.0[end..]);
                        add_into(&mut pending, Word(v), if rc.is_one() { c.clone() } else { &c * rc });
                    }
                }
            }
        }
        out
    }

    /// Enumerates the normal words in increasing order, failing past `limit` words.
    pub fn normal_basis(&self, limit: usize) -> Result<Vec<Word>> {
        let mut basis = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.generators.len() as GenId {
                    let mut v = w.0.clone();
                    v.push(g);
                    // Only subwords ending at the new letter can be new redexes.
                    let fresh = self.lhs_lengths.iter().all(|&len| {
                        len > v.len() || !self.lhs_index.contains_key(&v[v.len() - len..])
                    });
                    if fresh {
                        next.push(Word(v));
                    }
                }
            }
            basis.extend(next.iter().cloned());
            if basis.len() > limit {
                return Err(Error::BudgetExceeded(format!(
                    "{} has more than {limit} normal words",
                    self.name
                )));
            }
            frontier = next;
        }
        basis.sort();
        Ok(basis)
    }

    /// Splits a normal word of a tensor presentation into its two factor words.
    pub fn split(&self, w: &Word) -> Option<(Word, Word)> {
        let t = self.tensor.as_ref()?;
        let offset = t.left.generators.len() as GenId;
        let cut = w.0.iter().position(|&g| g >= offset).unwrap_or(w.len());
        let left = Word(w.0[..cut].to_vec());
        let right = Word(w.0[cut..].iter().map(|g| g.saturating_sub(offset)).collect());
        Some((left, right))
    }

    /// Renders a word: runs of one generator collapse into powers; tensor words print as `l ⊗ r`.
    pub fn render_word(&self, w: &Word) -> String {
        if let (Some(t), Some((l, r))) = (self.tensor.as_ref(), self.split(w)) {
            return format!("{} ⊗ {}", t.left.render_word(&l), t.right.render_word(&r));
        }
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let g = w.0[i];
            let mut j = i;
            while j < w.len() && w.0[j] == g {
                j += 1;
            }
            let name = &self.generators[g as usize];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    /// Lists overlap and inclusion ambiguities whose two reductions disagree.
    pub fn check_confluence(self: &Arc<Self>) -> ConfluenceReport {
        let mut unresolved = Vec::new();
        let resolve = |word: Word, rules: (usize, usize), a: BTreeMap<Word, CommPoly>, b: BTreeMap<Word, CommPoly>| {
            let left = AlgElement::from_terms_reduced(self, a);
            let right = AlgElement::from_terms_reduced(self, b);
            (left != right).then_some(Overlap {
                word,
                rules,
                left,
                right,
            })
        };
        let splice = |prefix: &[GenId], rhs: &[(Word, CommPoly)], suffix: &[GenId]| {
            let mut m = BTreeMap::new();
            for (w, c) in rhs {
                let mut v = prefix.to_vec();
                v.extend_from_slice(&w.0);
                v.extend_from_slice(suffix);
                add_into(&mut m, Word(v), c.clone());
            }
            m
        };
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (li, lj) = (&ri.lhs.0, &rj.lhs.0);
                // Proper overlaps: a suffix of lhs_i equals a prefix of lhs_j.
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let mut word = li.clone();
                        word.extend_from_slice(&lj[k..]);
                        let a = splice(&[], &ri.rhs, &lj[k..]);
                        let b = splice(&li[..li.len() - k], &rj.rhs, &[]);
                        unresolved.extend(resolve(Word(word), (i, j), a, b));
                    }
                }
                // Inclusions: lhs_j occurs inside lhs_i.
                if i == j || lj.len() > li.len() || (lj.len() == li.len() && j < i) {
                    continue;
                }
                for p in 0..=li.len() - lj.len() {
                    if li[p..p + lj.len()] == lj[..] {
                        let a = splice(&[], &ri.rhs, &[]);
                        let b = splice(&li[..p], &rj.rhs, &li[p + lj.len()..]);
                        unresolved.extend(resolve(ri.lhs.clone(), (i, j), a, b));
                    }
                }
            }
        }
        ConfluenceReport { unresolved }
    }
}

fn add_into(m: &mut BTreeMap<Word, CommPoly>, w: Word, c: CommPoly) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match m.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = &*o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// An ambiguity whose two one-step reductions have different normal forms.
#[derive(Debug, Clone)]
pub struct Overlap {
    pub word: Word,
    pub rules: (usize, usize),
    pub left: AlgElement,
    pub right: AlgElement,
}

#[derive(Debug, Clone, Default)]
pub struct ConfluenceReport {
    pub unresolved: Vec<Overlap>,
}

impl ConfluenceReport {
    pub fn is_empty(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn len(&self) -> usize {
        self.unresolved.len()
    }
}

/// A linear combination of normal words with [`CommPoly`] coefficients.
#[derive(Clone)]
pub struct AlgElement {
    algebra: Arc<PresentedAlgebra>,
    terms: BTreeMap<Word, CommPoly>,
}

impl AlgElement {
    pub fn zero(alg: &Arc<PresentedAlgebra>) -> Self {
        AlgElement {
            algebra: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<PresentedAlgebra>) -> Self {
        Self::scalar(alg, CommPoly::one(alg.order))
    }

    pub fn scalar(alg: &Arc<PresentedAlgebra>, c: CommPoly) -> Self {
        Self::from_word(alg, Word::empty(), c).expect("empty word is valid")
    }

    pub fn constant(alg: &Arc<PresentedAlgebra>, c: CyclotomicNumber) -> Self {
        Self::scalar(alg, CommPoly::constant(c))
    }

    pub fn generator(alg: &Arc<PresentedAlgebra>, g: GenId) -> Result<Self> {
        Self::from_word(alg, Word::letter(g), CommPoly::one(alg.order))
    }

    pub fn named(alg: &Arc<PresentedAlgebra>, name: &str) -> Result<Self> {
        let g = alg
            .generator(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Self::generator(alg, g)
    }

    /// `c · w`, reduced to normal form.
    pub fn from_word(alg: &Arc<PresentedAlgebra>, w: Word, c: CommPoly) -> Result<Self> {
        alg.check_word(&w)?;
        if c.order() != alg.order {
            return Err(Error::OrderMismatch(alg.order, c.order()));
        }
        let mut m = BTreeMap::new();
        add_into(&mut m, w, c);
        Ok(Self::from_terms_reduced(alg, m))
    }

    /// Normal form of a single word.
    pub fn normal_form(alg: &Arc<PresentedAlgebra>, w: &Word) -> Result<Self> {
        Self::from_word(alg, w.clone(), CommPoly::one(alg.order))
    }

    /// Sums and reduces arbitrary (not necessarily normal) terms.
    pub fn from_terms(alg: &Arc<PresentedAlgebra>, terms: impl IntoIterator<Item = (Word, CommPoly)>) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (w, c) in terms {
            alg.check_word(&w)?;
            add_into(&mut m, w, c);
        }
        Ok(Self::from_terms_reduced(alg, m))
    }

    fn from_terms_reduced(alg: &Arc<PresentedAlgebra>, m: BTreeMap<Word, CommPoly>) -> Self {
        AlgElement {
            algebra: alg.clone(),
            terms: alg.reduce(m),
        }
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CommPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> CommPoly {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| CommPoly::zero(self.algebra.order))
    }

    /// Largest word length among the terms (0 for scalars and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The terms whose words have exactly `d` letters.
    pub fn homogeneous_component(&self, d: usize) -> Self {
        AlgElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(
                self.algebra.name.clone(),
                other.algebra.name.clone(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c.clone());
        }
        Ok(AlgElement {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut pending = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                add_into(&mut pending, w1.concat(w2), c1.try_mul(c2)?);
            }
        }
        Ok(Self::from_terms_reduced(&self.algebra, pending))
    }

    pub fn scale(&self, c: &CommPoly) -> Self {
        AlgElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (w.clone(), d * c))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = AlgElement::one(&self.algebra);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every coefficient and re-reduces.
    pub fn map_coefficients(&self, f: impl Fn(&CommPoly) -> CommPoly) -> Self {
        let mut m = BTreeMap::new();
        for (w, c) in &self.terms {
            add_into(&mut m, w.clone(), f(c));
        }
        // Coefficients do not affect normality of words.
        AlgElement {
            algebra: self.algebra.clone(),
            terms: m,
        }
    }

    /// Reinterprets the element in another presentation via a generator relabeling.
    pub fn relabel(&self, target: &Arc<PresentedAlgebra>, map: &dyn Fn(GenId) -> GenId) -> Result<Self> {
        Self::from_terms(
            target,
            self.terms
                .iter()
                .map(|(w, c)| (Word(w.0.iter().map(|&g| map(g)).collect()), c.clone())),
        )
    }

    /// Embeds an element of the left factor into a tensor presentation.
    pub fn embed_left(&self, tensor: &Arc<PresentedAlgebra>) -> Result<Self> {
        let (l, _) = tensor
            .factors()
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not a tensor product", tensor.name)))?;
        if !l.same_as(&self.algebra) {
            return Err(Error::AlgebraMismatch(self.algebra.name.clone(), l.name.clone()));
        }
        self.relabel(tensor, &|g| g)
    }

    /// Embeds an element of the right factor into a tensor presentation.
    pub fn embed_right(&self, tensor: &Arc<PresentedAlgebra>) -> Result<Self> {
        let (l, r) = tensor
            .factors()
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not a tensor product", tensor.name)))?;
        if !r.same_as(&self.algebra) {
            return Err(Error::AlgebraMismatch(self.algebra.name.clone(), r.name.clone()));
        }
        let offset = l.generators.len() as GenId;
        self.relabel(tensor, &|g| g + offset)
    }

    /// `Σ c · f(left word) · g(right word)` over the terms of a tensor element.
    pub fn map_tensor(
        &self,
        target: &Arc<PresentedAlgebra>,
        f: &dyn Fn(&Word) -> Result<AlgElement>,
        g: &dyn Fn(&Word) -> Result<AlgElement>,
    ) -> Result<AlgElement> {
        let mut acc = AlgElement::zero(target);
        for (w, c) in &self.terms {
            let (l, r) = self
                .algebra
                .split(w)
                .ok_or_else(|| Error::InvalidArgument(format!("{} is not a tensor product", self.algebra.name)))?;
            let term = f(&l)?.try_mul(&g(&r)?)?.scale(c);
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Canonical textual form; parses back with [`AlgElement::parse`].
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.algebra.basis_names();
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if w.is_empty() {
                // The empty word is the smallest, so a scalar part always comes first.
                out.push_str(&c.render(names));
                continue;
            }
            let (neg, factor) = c.render_factor(names);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = (!w.is_empty()).then(|| self.algebra.render_word(w));
            match (factor, word) {
                (Some(f), Some(w)) if self.algebra.tensor.is_some() => out.push_str(&format!("{f}*({w})")),
                (Some(f), Some(w)) => out.push_str(&format!("{f}*{w}")),
                (Some(f), None) => out.push_str(&f),
                (None, Some(w)) => out.push_str(&w),
                (None, None) => out.push('1'),
            }
        }
        out
    }

    /// Parses an element using generator names, coefficient symbols, `q`/`z`, and `+ - * / ^`.
    pub fn parse(alg: &Arc<PresentedAlgebra>, src: &str) -> Result<Self> {
        Self::parse_with(alg, src, &GeneratorsOnly)
    }

    pub fn parse_with(alg: &Arc<PresentedAlgebra>, src: &str, ctx: &dyn ParseContext) -> Result<Self> {
        let e = expr::parse(src)?;
        Self::from_expr(alg, &e, ctx)
    }

    pub fn from_expr(alg: &Arc<PresentedAlgebra>, e: &Expr, ctx: &dyn ParseContext) -> Result<Self> {
        let rec = |x: &Expr| Self::from_expr(alg, x, ctx);
        let out = match e {
            Expr::Int(_) => Self::scalar(alg, CommPoly::from_expr(alg.order, e, None)?),
            Expr::Ident(id) => resolve_ident(alg, id, ctx)?,
            Expr::Neg(a) => -rec(a)?,
            Expr::Add(a, b) => rec(a)?.try_add(&rec(b)?)?,
            Expr::Sub(a, b) => rec(a)?.try_sub(&rec(b)?)?,
            Expr::Mul(a, b) => rec(a)?.try_mul(&rec(b)?)?,
            Expr::Div(a, b) => {
                let d = rec(b)?;
                let c = d
                    .as_scalar()
                    .and_then(|c| c.as_constant())
                    .ok_or_else(|| Error::InvalidArgument("division by a non-constant".into()))?;
                rec(a)?.scale(&CommPoly::constant(c.inverse()?))
            }
            Expr::Pow(a, k) => {
                let base = rec(a)?;
                if let Some(limit) = ctx.max_degree() {
                    let deg = base.degree().saturating_mul(*k as usize);
                    if deg > limit {
                        return Err(Error::BudgetExceeded(format!(
                            "expansion degree {deg} exceeds --max-degree {limit}"
                        )));
                    }
                }
                base.pow(*k)
            }
        };
        if let Some(limit) = ctx.max_degree() {
            if out.degree() > limit {
                return Err(Error::BudgetExceeded(format!(
                    "expansion degree {} exceeds --max-degree {limit}",
                    out.degree()
                )));
            }
        }
        Ok(out)
    }

    /// The coefficient if the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<CommPoly> {
        match self.terms.len() {
            0 => Some(CommPoly::zero(self.algebra.order)),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(w, _)| w.is_empty())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }
}

/// Hooks for resolving identifiers while parsing elements.
pub trait ParseContext {
    /// Resolves identifiers that are not plain generator names.
    fn element(&self, _alg: &Arc<PresentedAlgebra>, _id: &Ident) -> Result<Option<AlgElement>> {
        Ok(None)
    }

    /// Maps the basis argument of `t[i, w]` to an H-basis index.
    fn basis_index(&self, e: &Expr) -> Result<u32> {
        commpoly::numeric_basis_index(e, 0)
    }

    fn max_degree(&self) -> Option<usize> {
        None
    }
}

pub struct GeneratorsOnly;

impl ParseContext for GeneratorsOnly {}

fn resolve_ident(alg: &Arc<PresentedAlgebra>, id: &Ident, ctx: &dyn ParseContext) -> Result<AlgElement> {
    if id.args.is_empty() && id.primes == 0 {
        if let Some(g) = alg.generator(&id.name) {
            return AlgElement::generator(alg, g);
        }
    }
    if let Some(e) = ctx.element(alg, id)? {
        return Ok(e);
    }
    let basis = |e: &Expr| ctx.basis_index(e);
    match commpoly::parse_symbol(id, Some(&basis)) {
        Ok(Some(v)) => Ok(AlgElement::scalar(alg, CommPoly::var(alg.order, v))),
        Ok(None) => Ok(AlgElement::constant(alg, CyclotomicNumber::primitive_root(alg.order))),
        Err(_) => Err(ParseError::new(
            id.pos,
            format!("a generator of {} or a coefficient symbol", alg.name),
            format!("`{}`", id.name),
        )
        .into()),
    }
}

/// An algebra (or anti-algebra) map given by images of generators.
///
/// Words are mapped to products of images; nothing checks that the images
/// satisfy the defining relations (see the axiom checkers in `hopf`).
pub struct GeneratorMap {
    target: Arc<PresentedAlgebra>,
    images: Vec<AlgElement>,
    anti: bool,
}

impl GeneratorMap {
    pub fn new(target: &Arc<PresentedAlgebra>, images: Vec<AlgElement>) -> Self {
        GeneratorMap {
            target: target.clone(),
            images,
            anti: false,
        }
    }

    pub fn anti(target: &Arc<PresentedAlgebra>, images: Vec<AlgElement>) -> Self {
        GeneratorMap {
            target: target.clone(),
            images,
            anti: true,
        }
    }

    pub fn target(&self) -> &Arc<PresentedAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[AlgElement] {
        &self.images
    }

    /// Image of a word (not necessarily normal).
    pub fn apply_word(&self, w: &Word) -> Result<AlgElement> {
        let mut acc = AlgElement::one(&self.target);
        let letters: Box<dyn Iterator<Item = &GenId>> = if self.anti {
            Box::new(w.0.iter().rev())
        } else {
            Box::new(w.0.iter())
        };
        for &g in letters {
            let img = self
                .images
                .get(g as usize)
                .ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?;
            acc = acc.try_mul(img)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &AlgElement) -> Result<AlgElement> {
        let mut acc = AlgElement::zero(&self.target);
        for (w, c) in e.terms() {
            acc = acc.try_add(&self.apply_word(w)?.scale(c))?;
        }
        Ok(acc)
    }

    /// Applies the map, reusing products of shared word prefixes.
    pub fn apply_memo(&self, e: &AlgElement) -> Result<AlgElement> {
        let mut memo: HashMap<Vec<GenId>, AlgElement> = HashMap::new();
        memo.insert(Vec::new(), AlgElement::one(&self.target));
        let mut acc = AlgElement::zero(&self.target);
        for (w, c) in e.terms() {
            let letters: Vec<GenId> = if self.anti {
                w.0.iter().rev().copied().collect()
            } else {
                w.0.clone()
            };
            let mut k = letters.len();
            while !memo.contains_key(&letters[..k]) {
                k -= 1;
            }
            let mut cur = memo[&letters[..k]].clone();
            for i in k..letters.len() {
                let img = self
                    .images
                    .get(letters[i] as usize)
                    .ok_or_else(|| Error::UnknownGenerator(format!("#{}", letters[i])))?;
                cur = cur.try_mul(img)?;
                memo.insert(letters[..=i].to_vec(), cur.clone());
            }
            acc = acc.try_add(&cur.scale(c))?;
        }
        Ok(acc)
    }
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.terms == other.terms
    }
}

impl Eq for AlgElement {}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.algebra.name, self.render())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&AlgElement> for &AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: &AlgElement) -> AlgElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<AlgElement> for AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: AlgElement) -> AlgElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Neg for AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        -&self
    }
}

/// Distinct words occurring in a set of elements, sorted.
pub fn support<'a>(elems: impl IntoIterator<Item = &'a AlgElement>) -> Vec<Word> {
    let set: HashSet<Word> = elems
        .into_iter()
        .flat_map(|e| e.terms.keys().cloned())
        .collect();
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commpoly::{Param, ParamName};

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn w(v: &[GenId]) -> Word {
        Word::from(v)
    }

    /// k<x, y | x^n = a, yx = q xy, y^n = c> with symbolic a, c.
    fn taft_like(n: u32) -> Arc<PresentedAlgebra> {
        let q = CommPoly::constant(CyclotomicNumber::primitive_root(n));
        let a = CommPoly::param(n, Param::new(ParamName::A));
        let c = CommPoly::param(n, Param::new(ParamName::C));
        let rules = vec![
            RewriteRule::new(w(&[1, 0]), vec![(w(&[0, 1]), q)]),
            RewriteRule::new(Word::letter(0).pow(n as usize), vec![(Word::empty(), a)]),
            RewriteRule::new(Word::letter(1).pow(n as usize), vec![(Word::empty(), c)]),
        ];
        PresentedAlgebra::new_confluent("A", gens(&["x", "y"]), rules, n).unwrap()
    }

    #[test]
    fn deglex_order() {
        assert!(w(&[1]) < w(&[0, 0]));
        assert!(w(&[0, 1]) < w(&[1, 0]));
        assert!(Word::empty() < w(&[0]));
    }

    #[test]
    fn normal_forms() {
        let alg = taft_like(3);
        let yx = AlgElement::normal_form(&alg, &w(&[1, 0])).unwrap();
        assert_eq!(yx.render(), "z*x*y");
        let xxx = AlgElement::normal_form(&alg, &w(&[0, 0, 0])).unwrap();
        assert_eq!(xxx.render(), "a");
        assert!(AlgElement::normal_form(&alg, &w(&[0, 7])).is_err());
        assert_eq!(alg.normal_basis(100).unwrap().len(), 9);
    }

    #[test]
    fn squares_of_mu_images_at_n2() {
        // (t_y x + t_1 y)^2 = a t_y^2 + c t_1^2 in A_{a,c}, n = 2.
        let alg = taft_like(2);
        let e = AlgElement::parse(&alg, "t[1,2]*x + t[1,0]*y").unwrap();
        let sq = &e * &e;
        assert_eq!(sq.render(), "a*t[1,2]^2 + c*t[1,0]^2");
        let one = AlgElement::one(&alg);
        assert_eq!(&e * &one, e);
    }

    #[test]
    fn tensor_square_basics() {
        let q = CommPoly::constant(CyclotomicNumber::primitive_root(2));
        let rules = vec![
            RewriteRule::new(w(&[1, 0]), vec![(w(&[0, 1]), q)]),
            RewriteRule::new(w(&[0, 0]), vec![(Word::empty(), CommPoly::one(2))]),
            RewriteRule::new(w(&[1, 1]), vec![]),
        ];
        let h = PresentedAlgebra::new_confluent("H4", gens(&["x", "y"]), rules, 2).unwrap();
        let hh = PresentedAlgebra::tensor_square(&h).unwrap();
        assert!(hh.check_confluence().is_empty());
        // (1⊗y)(x⊗1) = (x⊗1)(1⊗y)
        let prod = AlgElement::normal_form(&hh, &w(&[3, 0])).unwrap();
        assert_eq!(prod, AlgElement::normal_form(&hh, &w(&[0, 3])).unwrap());
        assert_eq!(prod.render(), "x ⊗ y");
        assert_eq!(hh.normal_basis(100).unwrap().len(), 16);
        let yx = AlgElement::normal_form(&hh, &w(&[1, 2])).unwrap();
        assert!((&yx * &yx).is_zero());
    }

    #[test]
    fn broken_rule_set_reports_one_overlap() {
        let q = CommPoly::constant(CyclotomicNumber::primitive_root(3));
        let rules = vec![
            RewriteRule::new(w(&[1, 0]), vec![(w(&[0, 1]), CommPoly::one(3))]),
            RewriteRule::new(w(&[1, 0]), vec![(w(&[0, 1]), q)]),
        ];
        let alg = PresentedAlgebra::new("broken", gens(&["x", "y"]), rules.clone(), 3).unwrap();
        let report = alg.check_confluence();
        assert_eq!(report.len(), 1);
        assert_eq!(report.unresolved[0].word, w(&[1, 0]));
        assert!(matches!(
            PresentedAlgebra::new_confluent("broken", gens(&["x", "y"]), rules, 3),
            Err(Error::NotConfluent(1))
        ));
    }

    #[test]
    fn rejects_non_decreasing_rules() {
        let rules = vec![RewriteRule::new(w(&[0, 1]), vec![(w(&[1, 0]), CommPoly::one(2))])];
        assert!(matches!(
            PresentedAlgebra::new("bad", gens(&["x", "y"]), rules, 2),
            Err(Error::InvalidRule(_))
        ));
    }

    #[test]
    fn quantum_plane_binomial() {
        // (u + v)^n = u^n + v^n when vu = q uv.
        for n in 2..=6u32 {
            let q = CommPoly::constant(CyclotomicNumber::primitive_root(n));
            let rules = vec![RewriteRule::new(w(&[1, 0]), vec![(w(&[0, 1]), q)])];
            let qp = PresentedAlgebra::new_confluent("qplane", gens(&["u", "v"]), rules, n).unwrap();
            let u = AlgElement::named(&qp, "u").unwrap();
            let v = AlgElement::named(&qp, "v").unwrap();
            assert_eq!((&u + &v).pow(n), u.pow(n) + v.pow(n));
        }
    }

    #[test]
    fn parse_errors() {
        let alg = taft_like(2);
        assert!(matches!(AlgElement::parse(&alg, "x*w"), Err(Error::Parse(_))));
        assert!(AlgElement::parse(&alg, "x/y").is_err());
        assert_eq!(AlgElement::parse(&alg, "x/2*2").unwrap(), AlgElement::named(&alg, "x").unwrap());
    }

    #[test]
    fn algebra_mismatch() {
        let a = taft_like(2);
        let b = PresentedAlgebra::free("F", gens(&["x", "y"]), 2);
        let x = AlgElement::named(&a, "x").unwrap();
        let y = AlgElement::named(&b, "y").unwrap();
        assert!(matches!(x.try_mul(&y), Err(Error::AlgebraMismatch(_, _))));
    }
}
