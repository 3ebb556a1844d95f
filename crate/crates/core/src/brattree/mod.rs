//! Bratteli diagrams of weighted trees: edge multiplicities, the stage
//! embeddings `Z^{X_n} → Z^{X_{n+1}}`, path traces and per-vertex
//! constructions into approximately divisible targets.

#[cfg(test)]
mod tests;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::initial::{decompose_gcd, DenseTargetGroup};
use crate::limitgroup::TailVerdict;

/// How children are generated beyond the explicit data: every vertex on
/// level `ℓ` gets children weighted `period[ℓ mod len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRule {
    pub period: Vec<Vec<BigInt>>,
}

impl TreeRule {
    pub fn new(period: Vec<Vec<BigInt>>) -> Result<Self> {
        if period.is_empty() || period.iter().any(|w| w.is_empty()) {
            return Err(Error::Precondition(String::from("every rule level needs at least one child")));
        }
        if period.iter().flatten().any(|m| !m.is_positive()) {
            return Err(Error::Precondition(String::from("multiplicities must be positive")));
        }
        Ok(TreeRule { period })
    }

    /// Every vertex has the same weighted children.
    pub fn uniform(weights: &[i64]) -> Result<Self> {
        Self::new(vec![weights.iter().map(|&w| BigInt::from(w)).collect()])
    }

    fn weights(&self, level: usize) -> &[BigInt] {
        &self.period[level % self.period.len()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Vertex {
    parent: usize,
    /// Multiplicity of the edge from the parent; 1 for the root.
    weight: BigInt,
    children: Vec<usize>,
}

/// A rooted tree materialized to a finite depth, with positive edge
/// multiplicities. Vertices are named `(level, index)` in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    levels: Vec<Vec<Vertex>>,
    rule: Option<TreeRule>,
}

/// The element `[f, n]` with `f: X_n → Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeElement {
    pub stage: usize,
    pub values: Vec<BigInt>,
}

/// A vertex-condition verdict with the first failing vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCheck {
    pub verdict: TailVerdict,
    pub witness: Option<(usize, usize)>,
    /// Levels (below the checked depth) whose vertices all satisfy the level condition.
    pub good_levels: Vec<usize>,
}

/// Order units `table[level][index]` with `unit(x) = Σ m(x→y)·unit(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeHom<E> {
    pub table: Vec<Vec<E>>,
}

fn root() -> Vec<Vec<Vertex>> {
    vec![vec![Vertex { parent: 0, weight: BigInt::one(), children: Vec::new() }]]
}

impl WeightedTree {
    /// The tree generated by `rule`, materialized to `depth`.
    pub fn from_rule(rule: TreeRule, depth: usize) -> Self {
        let mut t = WeightedTree { levels: root(), rule: Some(rule) };
        t.deepen(depth).expect("rule trees always deepen");
        t
    }

    /// Binary tree with children weighted `(a, b)` at every vertex.
    pub fn binary(a: i64, b: i64, depth: usize) -> Result<Self> {
        Ok(Self::from_rule(TreeRule::uniform(&[a, b])?, depth))
    }

    /// Explicit levels `1..=D`: each entry is `(parent index, multiplicity)`.
    pub fn from_levels(levels: &[Vec<(usize, BigInt)>]) -> Result<Self> {
        let mut t = WeightedTree { levels: root(), rule: None };
        for (l, level) in levels.iter().enumerate() {
            let mut next = Vec::with_capacity(level.len());
            for (i, (parent, m)) in level.iter().enumerate() {
                if *parent >= t.levels[l].len() {
                    return Err(Error::Precondition(format!("vertex {}.{i} has no parent {l}.{parent}", l + 1)));
                }
                if !m.is_positive() {
                    return Err(Error::Precondition(format!("edge into {}.{i} has multiplicity {m}", l + 1)));
                }
                t.levels[l][*parent].children.push(i);
                next.push(Vertex { parent: *parent, weight: m.clone(), children: Vec::new() });
            }
            t.levels.push(next);
        }
        Ok(t)
    }

    /// Materialized depth `D` (levels `0..=D` exist).
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn rule(&self) -> Option<&TreeRule> {
        self.rule.as_ref()
    }

    pub fn level_size(&self, level: usize) -> Option<usize> {
        self.levels.get(level).map(Vec::len)
    }

    /// Extends the tree with its rule.
    pub fn deepen(&mut self, depth: usize) -> Result<()> {
        while self.depth() < depth {
            let rule = self
                .rule
                .as_ref()
                .ok_or_else(|| Error::NotMaterialized { level: self.depth() + 1, index: 0 })?;
            let l = self.depth();
            let weights = rule.weights(l).to_vec();
            let mut next = Vec::new();
            for (p, v) in self.levels[l].iter_mut().enumerate() {
                for w in &weights {
                    v.children.push(next.len());
                    next.push(Vertex { parent: p, weight: w.clone(), children: Vec::new() });
                }
            }
            self.levels.push(next);
        }
        Ok(())
    }

    fn vertex(&self, level: usize, index: usize) -> Result<&Vertex> {
        self.levels
            .get(level)
            .and_then(|l| l.get(index))
            .ok_or(Error::NotMaterialized { level, index })
    }

    /// `v(x)`: multiplicities of the edges leaving `x`, in child order.
    pub fn multiplicity_vector(&self, level: usize, index: usize) -> Result<Vec<BigInt>> {
        let v = self.vertex(level, index)?;
        if level >= self.depth() {
            return Err(Error::NotMaterialized { level: level + 1, index });
        }
        Ok(v.children.iter().map(|&c| self.levels[level + 1][c].weight.clone()).collect())
    }

    /// Vertex indices from the root down to `(level, index)`.
    pub fn path_to(&self, level: usize, index: usize) -> Result<Vec<usize>> {
        self.vertex(level, index)?;
        let mut path = vec![index];
        let mut i = index;
        for l in (1..=level).rev() {
            i = self.levels[l][i].parent;
            path.push(i);
        }
        path.reverse();
        Ok(path)
    }

    /// `m(0)·m(1)···m(k−1)` along a path, for `k = 0..len`.
    pub fn path_denominators(&self, path: &[usize]) -> Result<Vec<BigInt>> {
        self.check_path(path)?;
        let mut acc = BigInt::one();
        let mut out = vec![acc.clone()];
        for (l, &i) in path.iter().enumerate().skip(1) {
            acc *= &self.levels[l][i].weight;
            out.push(acc.clone());
        }
        Ok(out)
    }

    fn check_path(&self, path: &[usize]) -> Result<()> {
        if path.first() != Some(&0) {
            return Err(Error::Precondition(String::from("paths start at the root 0.0")));
        }
        for (l, w) in path.windows(2).enumerate() {
            if self.vertex(l + 1, w[1])?.parent != w[0] {
                return Err(Error::Precondition(format!("{}.{} is not a child of {l}.{}", l + 1, w[1], w[0])));
            }
        }
        Ok(())
    }

    pub fn element(&self, stage: usize, values: Vec<BigInt>) -> Result<TreeElement> {
        let size = self.level_size(stage).ok_or(Error::NotMaterialized { level: stage, index: 0 })?;
        if values.len() != size {
            return Err(Error::Dimension { expected: size, found: values.len() });
        }
        Ok(TreeElement { stage, values })
    }

    /// `[f, n] ↦ [f', n+1]` with `f'(y) = m(x→y)·f(x)`.
    pub fn pushforward(&self, t: &TreeElement) -> Result<TreeElement> {
        let n = t.stage;
        let next = self.levels.get(n + 1).ok_or(Error::NotMaterialized { level: n + 1, index: 0 })?;
        let values = next.iter().map(|y| &y.weight * &t.values[y.parent]).collect();
        Ok(TreeElement { stage: n + 1, values })
    }

    /// The element at a later stage.
    pub fn push_to(&self, t: &TreeElement, stage: usize) -> Result<TreeElement> {
        let mut out = t.clone();
        while out.stage < stage {
            out = self.pushforward(&out)?;
        }
        Ok(out)
    }

    /// `τ_p([f, n]) = f(x_n)/m(0)···m(n−1)` for a root path `p` through stage `n`.
    pub fn tree_trace(&self, path: &[usize], t: &TreeElement) -> Result<BigRational> {
        if path.len() <= t.stage {
            return Err(Error::Precondition(format!("path of length {} misses stage {}", path.len(), t.stage)));
        }
        let dens = self.path_denominators(&path[..=t.stage])?;
        Ok(BigRational::new(t.values[path[t.stage]].clone(), dens[t.stage].clone()))
    }

    /// Every vertex-condition is checked on levels `0..depth`.
    fn vertex_check(&self, depth: usize, ok: impl Fn(&[BigInt]) -> bool) -> Result<(Option<(usize, usize)>, Vec<usize>)> {
        if depth > self.depth() {
            return Err(Error::NotMaterialized { level: depth, index: 0 });
        }
        let mut witness = None;
        let mut good = Vec::new();
        for l in 0..depth {
            let mut level_ok = true;
            for i in 0..self.levels[l].len() {
                if !ok(&self.multiplicity_vector(l, i)?) {
                    level_ok = false;
                    witness.get_or_insert((l, i));
                }
            }
            if level_ok {
                good.push(l);
            }
        }
        Ok((witness, good))
    }

    /// Initial-object sufficient condition: every `v(x)` has gcd 1.
    pub fn tree_initial_check(&self, depth: usize) -> Result<TreeCheck> {
        let coprime = |v: &[BigInt]| v.iter().fold(BigInt::zero(), |g, m| g.gcd(m)).is_one();
        let (witness, good_levels) = self.vertex_check(depth, coprime)?;
        let verdict = match &self.rule {
            Some(rule) => TailVerdict {
                value: witness.is_none() && rule.period.iter().all(|w| coprime(w)),
                exact: true,
            },
            None => TailVerdict { value: witness.is_none(), exact: false },
        };
        Ok(TreeCheck { verdict, witness, good_levels })
    }

    /// Approximate-divisibility sufficient condition: infinitely many levels
    /// with no multiplicity 1.
    pub fn tree_approx_div_check(&self, depth: usize) -> Result<TreeCheck> {
        let no_one = |v: &[BigInt]| v.iter().all(|m| !m.is_one());
        let (witness, good_levels) = self.vertex_check(depth, no_one)?;
        let verdict = match &self.rule {
            Some(rule) => TailVerdict { value: rule.period.iter().any(|w| no_one(w)), exact: true },
            None => TailVerdict { value: depth > 0 && good_levels.last() == Some(&(depth - 1)), exact: false },
        };
        Ok(TreeCheck { verdict, witness, good_levels })
    }

    /// DOT digraph of levels `0..=depth`, vertices named `level.index`.
    pub fn export_dot(&self, depth: usize) -> Result<String> {
        if depth > self.depth() {
            return Err(Error::NotMaterialized { level: depth, index: 0 });
        }
        let mut out = String::from("digraph tree {\n");
        for (l, level) in self.levels[..=depth].iter().enumerate() {
            for i in 0..level.len() {
                let _ = writeln!(out, "  \"{l}.{i}\";");
            }
        }
        for (l, level) in self.levels[1..=depth].iter().enumerate() {
            for (i, v) in level.iter().enumerate() {
                let _ = writeln!(out, "  \"{l}.{}\" -> \"{}.{i}\" [label=\"{}\"];", v.parent, l + 1, v.weight);
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Non-negativity of `[f, n]`; exact because the stage maps are order embeddings.
pub fn tree_positive(t: &TreeElement) -> bool {
    t.values.iter().all(|v| !v.is_negative())
}

impl<E: Clone + PartialEq + core::fmt::Debug> TreeHom<E> {
    /// Re-checks every vertex identity and positivity.
    pub fn verify<G: DenseTargetGroup<Elem = E>>(&self, g: &G, tree: &WeightedTree) -> Result<()> {
        for (l, level) in self.table.iter().enumerate() {
            for (i, e) in level.iter().enumerate() {
                if !g.is_order_unit(e) {
                    return Err(Error::Verification(format!("vertex {l}.{i} is not an order unit")));
                }
                if l + 1 < self.table.len() {
                    let v = tree.vertex(l, i)?;
                    let sum = v.children.iter().fold(g.zero(), |acc, &c| {
                        g.add(&acc, &g.scale(&self.table[l + 1][c], &tree.levels[l + 1][c].weight))
                    });
                    if sum != *e {
                        return Err(Error::Verification(format!("identity fails at {l}.{i}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Splits `u` down the tree vertex by vertex with gcd decompositions of `v(x)`.
pub fn build_tree_initial_hom<G: DenseTargetGroup>(
    tree: &WeightedTree,
    g: &G,
    u: &G::Elem,
    depth: usize,
) -> Result<TreeHom<G::Elem>> {
    if !g.is_order_unit(u) {
        return Err(Error::Precondition(String::from("u is not an order unit")));
    }
    let check = tree.tree_initial_check(depth)?;
    if let Some((l, i)) = check.witness {
        let v = tree.multiplicity_vector(l, i)?;
        let parts: Vec<String> = v.iter().map(|m| format!("{m}")).collect();
        return Err(Error::NotCoprime(format!("vertex {l}.{i} has multiplicities ({})", parts.join(", "))));
    }
    let mut table = vec![vec![u.clone()]];
    for l in 0..depth {
        let mut next = vec![g.zero(); tree.levels[l + 1].len()];
        for (i, e) in table[l].iter().enumerate() {
            let parts = decompose_gcd(g, e, &tree.multiplicity_vector(l, i)?)?;
            for (&c, p) in tree.levels[l][i].children.iter().zip(parts) {
                next[c] = p;
            }
        }
        table.push(next);
    }
    let h = TreeHom { table };
    h.verify(g, tree)?;
    Ok(h)
}
