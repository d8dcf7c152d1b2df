//! Finite left modules over finite rings, as explicit tables.
//!
//! A [`LeftModule`] is an abelian group table plus an action table of the ring
//! on the carrier. Module axioms are checked exhaustively on construction, so
//! anything accepted here really is a module.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ring::{Elem, FiniteRing};

/// An element of a module carrier, identified by its table index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MElem(pub usize);

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("malformed module table: {0}")]
    MalformedTable(String),
    #[error("module axiom failed: {0}")]
    AxiomViolation(String),
    #[error("invalid module homomorphism: {0}")]
    InvalidHom(String),
    #[error("carrier subset is not a submodule: {0}")]
    NotASubmodule(String),
}

/// A finite left module over a fixed finite ring.
#[derive(Clone)]
pub struct LeftModule {
    pub ring: FiniteRing,
    size: usize,
    add: Vec<usize>,
    act: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    names: Vec<String>,
}

impl PartialEq for LeftModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.size == other.size
            && self.zero == other.zero
            && self.add == other.add
            && self.act == other.act
    }
}

impl Eq for LeftModule {}

impl fmt::Debug for LeftModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LeftModule(size {} over {})",
            self.size,
            self.ring.label()
        )
    }
}

impl LeftModule {
    pub fn from_tables(
        ring: &FiniteRing,
        size: usize,
        add: Vec<usize>,
        act: Vec<usize>,
        zero: usize,
        names: Option<Vec<String>>,
    ) -> Result<Self, ModuleError> {
        if size == 0 {
            return Err(ModuleError::MalformedTable("empty carrier".into()));
        }
        if add.len() != size * size {
            return Err(ModuleError::MalformedTable("addition table size".into()));
        }
        if act.len() != ring.order() * size {
            return Err(ModuleError::MalformedTable("action table size".into()));
        }
        if add.iter().chain(act.iter()).any(|&v| v >= size) || zero >= size {
            return Err(ModuleError::MalformedTable("entry out of range".into()));
        }
        let names =
            names.unwrap_or_else(|| (0..size).map(|i| format!("m{i}")).collect());
        if names.len() != size {
            return Err(ModuleError::MalformedTable("name count".into()));
        }
        let mut module = LeftModule {
            ring: ring.clone(),
            size,
            add,
            act,
            neg: vec![0; size],
            zero,
            names,
        };
        module.check_axioms()?;
        for m in 0..size {
            let neg = (0..size)
                .find(|&n| module.add[m * size + n] == module.zero)
                .ok_or_else(|| ModuleError::AxiomViolation(format!("m{m} has no negation")))?;
            module.neg[m] = neg;
        }
        Ok(module)
    }

    fn check_axioms(&self) -> Result<(), ModuleError> {
        let s = self.size;
        let viol = |m: String| Err(ModuleError::AxiomViolation(m));
        for m in 0..s {
            if self.add[m * s + self.zero] != m {
                return viol(format!("m{m} + 0 != m{m}"));
            }
            if self.act[self.ring.one().0 * s + m] != m {
                return viol(format!("1 does not fix m{m}"));
            }
            for n in 0..s {
                if self.add[m * s + n] != self.add[n * s + m] {
                    return viol(format!("addition not commutative at ({m},{n})"));
                }
                for p in 0..s {
                    if self.add[self.add[m * s + n] * s + p] != self.add[m * s + self.add[n * s + p]]
                    {
                        return viol(format!("addition not associative at ({m},{n},{p})"));
                    }
                }
            }
        }
        for a in self.ring.elements() {
            for b in self.ring.elements() {
                for m in 0..s {
                    let ab_m = self.act[self.ring.mul(a, b).0 * s + m];
                    let a_bm = self.act[a.0 * s + self.act[b.0 * s + m]];
                    if ab_m != a_bm {
                        return viol(format!("(ab)m != a(bm) at ({},{},{m})", a.0, b.0));
                    }
                    let sum_act = self.act[self.ring.add(a, b).0 * s + m];
                    let act_sum = self.add[self.act[a.0 * s + m] * s + self.act[b.0 * s + m]];
                    if sum_act != act_sum {
                        return viol(format!("(a+b)m != am+bm at ({},{},{m})", a.0, b.0));
                    }
                }
            }
        }
        for a in self.ring.elements() {
            for m in 0..s {
                for n in 0..s {
                    let lhs = self.act[a.0 * s + self.add[m * s + n]];
                    let rhs = self.add[self.act[a.0 * s + m] * s + self.act[a.0 * s + n]];
                    if lhs != rhs {
                        return viol(format!("a(m+n) != am+an at ({},{m},{n})", a.0));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ring acting on itself by left multiplication.
    pub fn regular(ring: &FiniteRing) -> Self {
        let n = ring.order();
        let mut add = Vec::with_capacity(n * n);
        let mut act = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(ring.add(Elem(a), Elem(b)).0);
            }
        }
        for a in 0..n {
            for m in 0..n {
                act.push(ring.mul(Elem(a), Elem(m)).0);
            }
        }
        let names = ring.elements().map(|e| ring.name(e).to_string()).collect();
        LeftModule::from_tables(ring, n, add, act, ring.zero().0, Some(names))
            .expect("regular module is a module")
    }

    /// The module carried by an additively-closed, action-closed subset of an
    /// existing module (e.g. an ideal inside the regular module).
    pub fn submodule(parent: &LeftModule, carrier: &BTreeSet<MElem>) -> Result<Self, ModuleError> {
        if !carrier.contains(&MElem(parent.zero)) {
            return Err(ModuleError::NotASubmodule("missing zero".into()));
        }
        let index: Vec<MElem> = carrier.iter().copied().collect();
        let lookup = |m: MElem| -> Result<usize, ModuleError> {
            index
                .binary_search(&m)
                .map_err(|_| ModuleError::NotASubmodule(format!("not closed (reaches m{})", m.0)))
        };
        let s = index.len();
        let mut add = Vec::with_capacity(s * s);
        let mut act = Vec::with_capacity(parent.ring.order() * s);
        for &m in &index {
            for &n in &index {
                add.push(lookup(parent.add(m, n))?);
            }
        }
        // Row-major over ring elements first, matching from_tables layout.
        let mut act_rows: Vec<Vec<usize>> = Vec::with_capacity(parent.ring.order());
        for a in parent.ring.elements() {
            let mut row = Vec::with_capacity(s);
            for &m in &index {
                row.push(lookup(parent.act(a, m))?);
            }
            act_rows.push(row);
        }
        for row in act_rows {
            act.extend(row);
        }
        let zero = index
            .binary_search(&MElem(parent.zero))
            .expect("checked above");
        let names = index.iter().map(|&m| parent.name(m).to_string()).collect();
        LeftModule::from_tables(&parent.ring, s, add, act, zero, Some(names))
    }

    /// Quotient by a submodule, with the projection map.
    pub fn quotient(
        parent: &LeftModule,
        sub: &BTreeSet<MElem>,
    ) -> Result<(Self, ModuleHom), ModuleError> {
        // Validate the submodule by constructing it.
        LeftModule::submodule(parent, sub)?;
        let s = parent.size;
        let mut coset_rep = vec![usize::MAX; s];
        for m in 0..s {
            if coset_rep[m] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = sub
                .iter()
                .map(|&i| parent.add(MElem(m), i).0)
                .collect();
            members.sort_unstable();
            let rep = members[0];
            for v in members {
                coset_rep[v] = rep;
            }
        }
        let mut reps: Vec<usize> = coset_rep.clone();
        reps.sort_unstable();
        reps.dedup();
        let class_of = |m: usize| reps.binary_search(&coset_rep[m]).unwrap();
        let q = reps.len();
        let mut add = Vec::with_capacity(q * q);
        for &m in &reps {
            for &n in &reps {
                add.push(class_of(parent.add(MElem(m), MElem(n)).0));
            }
        }
        let mut act = Vec::with_capacity(parent.ring.order() * q);
        for a in parent.ring.elements() {
            for &m in &reps {
                act.push(class_of(parent.act(a, MElem(m)).0));
            }
        }
        let names = reps
            .iter()
            .map(|&m| format!("[{}]", parent.name(MElem(m))))
            .collect();
        let module = LeftModule::from_tables(
            &parent.ring,
            q,
            add,
            act,
            class_of(parent.zero),
            Some(names),
        )?;
        let map = (0..s).map(class_of).collect();
        let hom = ModuleHom::new(parent.clone(), module.clone(), map)?;
        Ok((module, hom))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = MElem> {
        (0..self.size).map(MElem)
    }

    pub fn zero(&self) -> MElem {
        MElem(self.zero)
    }

    pub fn add(&self, m: MElem, n: MElem) -> MElem {
        MElem(self.add[m.0 * self.size + n.0])
    }

    pub fn neg(&self, m: MElem) -> MElem {
        MElem(self.neg[m.0])
    }

    pub fn sub(&self, m: MElem, n: MElem) -> MElem {
        self.add(m, self.neg(n))
    }

    pub fn act(&self, a: Elem, m: MElem) -> MElem {
        MElem(self.act[a.0 * self.size + m.0])
    }

    pub fn name(&self, m: MElem) -> &str {
        &self.names[m.0]
    }

    /// Does `a` act bijectively on the carrier? (Injectivity suffices on a
    /// finite set.)
    pub fn acts_bijectively(&self, a: Elem) -> bool {
        let mut seen = vec![false; self.size];
        for m in 0..self.size {
            let im = self.act[a.0 * self.size + m];
            if seen[im] {
                return false;
            }
            seen[im] = true;
        }
        true
    }

    /// The submodule generated by a set of carrier elements.
    pub fn generated_submodule(&self, gens: &BTreeSet<MElem>) -> BTreeSet<MElem> {
        let mut members = vec![false; self.size];
        members[self.zero] = true;
        let mut queue: Vec<usize> = gens.iter().map(|g| g.0).collect();
        while let Some(x) = queue.pop() {
            if members[x] {
                continue;
            }
            members[x] = true;
            for y in 0..self.size {
                if members[y] {
                    let s = self.add[x * self.size + y];
                    if !members[s] {
                        queue.push(s);
                    }
                }
            }
            for a in self.ring.elements() {
                let im = self.act[a.0 * self.size + x];
                if !members[im] {
                    queue.push(im);
                }
            }
        }
        // Close under addition to a fixpoint (new sums of older members).
        loop {
            let mut changed = false;
            let current: Vec<usize> =
                (0..self.size).filter(|&m| members[m]).collect();
            for &x in &current {
                for &y in &current {
                    let s = self.add[x * self.size + y];
                    if !members[s] {
                        members[s] = true;
                        changed = true;
                    }
                }
                for a in self.ring.elements() {
                    let im = self.act[a.0 * self.size + x];
                    if !members[im] {
                        members[im] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..self.size).filter(|&m| members[m]).map(MElem).collect()
    }
}

/// An additive, action-equivariant map between modules over the same ring.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: LeftModule,
    pub target: LeftModule,
    map: Vec<usize>,
}

impl ModuleHom {
    pub fn new(
        source: LeftModule,
        target: LeftModule,
        map: Vec<usize>,
    ) -> Result<Self, ModuleError> {
        if source.ring != target.ring {
            return Err(ModuleError::InvalidHom("different base rings".into()));
        }
        if map.len() != source.size {
            return Err(ModuleError::InvalidHom("map length".into()));
        }
        if map.iter().any(|&v| v >= target.size) {
            return Err(ModuleError::InvalidHom("image out of range".into()));
        }
        for m in source.elements() {
            for n in source.elements() {
                if map[source.add(m, n).0] != target.add(MElem(map[m.0]), MElem(map[n.0])).0 {
                    return Err(ModuleError::InvalidHom(format!(
                        "additivity fails at ({},{})",
                        m.0, n.0
                    )));
                }
            }
            for a in source.ring.elements() {
                if map[source.act(a, m).0] != target.act(a, MElem(map[m.0])).0 {
                    return Err(ModuleError::InvalidHom(format!(
                        "equivariance fails at ({},{})",
                        a.0, m.0
                    )));
                }
            }
        }
        Ok(ModuleHom {
            source,
            target,
            map,
        })
    }

    pub fn zero(source: LeftModule, target: LeftModule) -> Result<Self, ModuleError> {
        let z = target.zero().0;
        let len = source.size;
        Self::new(source, target, vec![z; len])
    }

    pub fn apply(&self, m: MElem) -> MElem {
        MElem(self.map[m.0])
    }

    pub fn kernel(&self) -> BTreeSet<MElem> {
        self.source
            .elements()
            .filter(|&m| self.apply(m) == self.target.zero())
            .collect()
    }

    pub fn image(&self) -> BTreeSet<MElem> {
        self.source.elements().map(|m| self.apply(m)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && self.is_injective()
    }
}
