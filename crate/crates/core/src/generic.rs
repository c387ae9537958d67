//! Generic filters built as descending chains through dense sets.
//!
//! [`rs_generic`] is the Rasiowa–Sikorski construction: starting from a
//! condition, each dense set's refiner is applied in turn and the filter is
//! everything above the resulting chain. [`m_generic`] applies it to the
//! literal definition of genericity over a finite transitive set `M`: the
//! dense sets are exactly the elements of `M` that are dense subsets of the
//! poset.
//!
//! A poset is encoded inside `M` as the set of Kuratowski pairs `(p, q)`
//! with `p ≤ q`, where conditions are their hereditarily finite codes; see
//! [`encode_poset`] and [`FiniteModel::decode_poset`].

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::hf::HFSet;
use crate::order::{DenseSpec, FinitePoset, LazyPoset, OrderError, PartialFn, PartialFnPoset, RefineError, RefinerKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericError {
    #[error("horizon {horizon} is smaller than the {needed} required steps")]
    HorizonTooSmall { horizon: usize, needed: usize },
    #[error("refiner {index} ({name}) failed: {source}")]
    Refine {
        index: usize,
        name: String,
        source: RefineError,
    },
    #[error("refiner {index} ({name}) broke its contract: {detail}")]
    Contract { index: usize, name: String, detail: String },
    #[error("{0} is not transitive")]
    NotTransitive(HFSet),
    #[error("{0} is not an element of the model")]
    NotInModel(HFSet),
    #[error("not a poset code: {0}")]
    NotAPoset(String),
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A step-by-step Rasiowa–Sikorski run. Single owner; call [`step`] until it
/// returns `false`, then [`finish`].
///
/// [`step`]: GenericSession::step
/// [`finish`]: GenericSession::finish
pub struct GenericSession<'a, P: LazyPoset> {
    poset: &'a P,
    specs: Vec<DenseSpec<P::Cond>>,
    chain: Vec<P::Cond>,
}

impl<'a, P: LazyPoset> GenericSession<'a, P> {
    pub fn new(
        poset: &'a P,
        specs: Vec<DenseSpec<P::Cond>>,
        start: P::Cond,
        horizon: usize,
    ) -> Result<Self, GenericError> {
        if horizon < specs.len() {
            return Err(GenericError::HorizonTooSmall {
                horizon,
                needed: specs.len(),
            });
        }
        Ok(GenericSession {
            poset,
            specs,
            chain: vec![start],
        })
    }

    pub fn chain(&self) -> &[P::Cond] {
        &self.chain
    }

    pub fn steps_done(&self) -> usize {
        self.chain.len() - 1
    }

    /// Applies the next refiner; `false` once every dense set has been used.
    pub fn step(&mut self) -> Result<bool, GenericError> {
        let index = self.steps_done();
        let Some(spec) = self.specs.get(index) else {
            return Ok(false);
        };
        let p = self.chain.last().expect("chain starts nonempty");
        let q = spec.refine(p).map_err(|source| GenericError::Refine {
            index,
            name: spec.name.clone(),
            source,
        })?;
        let broken = |detail: String| GenericError::Contract {
            index,
            name: spec.name.clone(),
            detail,
        };
        if !self.poset.leq(&q, p) {
            return Err(broken(format!("{q} does not extend {p}")));
        }
        if !spec.contains(&q) {
            return Err(broken(format!("{q} is not in the dense set")));
        }
        self.chain.push(q);
        Ok(true)
    }

    pub fn finish(mut self) -> Result<GenericFilter<P::Cond>, GenericError> {
        while self.step()? {}
        Ok(GenericFilter {
            chain: self.chain,
            met: self.specs.into_iter().map(|s| s.name).collect(),
        })
    }
}

/// The filter generated by a descending chain: `p ∈ G` iff some chain
/// element lies below `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericFilter<C> {
    chain: Vec<C>,
    met: Vec<String>,
}

impl<C: Clone> GenericFilter<C> {
    pub fn principal(start: C) -> Self {
        GenericFilter {
            chain: vec![start],
            met: Vec::new(),
        }
    }

    /// `p_0 ≥ p_1 ≥ …`.
    pub fn chain(&self) -> &[C] {
        &self.chain
    }

    /// The chain elements without repetition, in chain order.
    pub fn generators(&self) -> Vec<C>
    where
        C: PartialEq,
    {
        let mut out: Vec<C> = Vec::new();
        for c in &self.chain {
            if out.last() != Some(c) {
                out.push(c.clone());
            }
        }
        out
    }

    /// Names of the dense sets used to build the chain, in order.
    pub fn dense_sets(&self) -> &[String] {
        &self.met
    }

    pub fn bottom(&self) -> &C {
        self.chain.last().expect("chain is nonempty")
    }

    pub fn contains<P: LazyPoset<Cond = C>>(&self, poset: &P, p: &C) -> bool {
        self.chain.iter().any(|c| poset.leq(c, p))
    }

    /// Upward closed by definition; directed because consecutive chain
    /// elements are comparable. Checks the latter.
    pub fn is_descending<P: LazyPoset<Cond = C>>(&self, poset: &P) -> bool {
        self.chain.windows(2).all(|w| poset.leq(&w[1], &w[0]))
    }
}

impl GenericFilter<usize> {
    /// All members, for a finite poset.
    pub fn members(&self, poset: &FinitePoset) -> FixedBitSet {
        poset.above(*self.bottom()).clone()
    }

    /// `G` as the set of condition codes.
    pub fn as_hfset(&self, poset: &FinitePoset) -> HFSet {
        HFSet::from_elements(self.members(poset).ones().map(|p| poset.code(p).clone()))
    }
}

impl GenericFilter<PartialFn> {
    /// `⋃G`, the partial function the filter determines.
    pub fn union(&self) -> PartialFn {
        let mut m = BTreeMap::new();
        for c in &self.chain {
            m.extend(c.0.iter().map(|(&x, &v)| (x, v)));
        }
        PartialFn(m)
    }
}

/// Rasiowa–Sikorski: `p_0 = start`, `p_{k+1} = refiner_k(p_k)`.
pub fn rs_generic<P: LazyPoset>(
    poset: &P,
    specs: Vec<DenseSpec<P::Cond>>,
    start: P::Cond,
    horizon: usize,
) -> Result<GenericFilter<P::Cond>, GenericError> {
    GenericSession::new(poset, specs, start, horizon)?.finish()
}

/// Whether some chain element lies in the dense set.
pub fn meets<C: Clone>(g: &GenericFilter<C>, d: &DenseSpec<C>) -> bool {
    g.chain().iter().any(|c| d.contains(c))
}

/// Whether some filter member lies in an explicit subset of a finite poset.
pub fn meets_subset(g: &GenericFilter<usize>, poset: &FinitePoset, d: &FixedBitSet) -> bool {
    !g.members(poset).is_disjoint(d)
}

/// `{(code p, code q) : p ≤ q}` as Kuratowski pairs.
pub fn encode_poset(poset: &FinitePoset) -> HFSet {
    HFSet::from_elements((0..poset.len()).flat_map(|p| {
        poset
            .above(p)
            .ones()
            .map(move |q| HFSet::kpair(poset.code(p).clone(), poset.code(q).clone()))
    }))
}

/// A finite transitive set standing in for a ground model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    m: HFSet,
}

impl FiniteModel {
    pub fn new(m: HFSet) -> Result<Self, GenericError> {
        if !m.is_transitive() {
            return Err(GenericError::NotTransitive(m));
        }
        Ok(FiniteModel { m })
    }

    /// The transitive closure of `{x_1, …, x_n}`.
    pub fn generated_by(xs: impl IntoIterator<Item = HFSet>) -> Self {
        FiniteModel {
            m: HFSet::from_elements(xs).transitive_closure(),
        }
    }

    pub fn set(&self) -> &HFSet {
        &self.m
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        self.m.contains(x)
    }

    /// Decodes a set of Kuratowski pairs as a partial order. Conditions are
    /// the field of the relation in code order and are labelled by their
    /// rendering.
    pub fn decode_poset(code: &HFSet) -> Result<FinitePoset, GenericError> {
        let mut pairs = Vec::with_capacity(code.len());
        for e in code.elements() {
            pairs.push(
                e.as_kpair()
                    .ok_or_else(|| GenericError::NotAPoset(format!("{e} is not an ordered pair")))?,
            );
        }
        let mut field: Vec<HFSet> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        field.sort();
        field.dedup();
        let idx = |x: &HFSet| field.binary_search(x).expect("pair components are in the field");
        let edges: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (idx(a), idx(b))).collect();
        if let Some(p) = (0..field.len()).find(|&p| !edges.contains(&(p, p))) {
            return Err(GenericError::NotAPoset(format!("not reflexive at {}", field[p])));
        }
        let labels = field.iter().map(HFSet::render).collect();
        let poset = FinitePoset::from_pairs(labels, &edges)
            .map_err(|e| GenericError::NotAPoset(e.to_string()))?
            .with_codes(field)?;
        Ok(poset)
    }

    /// Elements of `M` that decode as nonempty posets.
    pub fn posets(&self) -> Vec<(HFSet, FinitePoset)> {
        self.m
            .elements()
            .iter()
            .filter(|x| !x.is_empty())
            .filter_map(|x| Self::decode_poset(x).ok().map(|p| (x.clone(), p)))
            .collect()
    }

    /// Elements of `M` all of whose members are condition codes of `poset`.
    pub fn subsets_of(&self, poset: &FinitePoset) -> Vec<FixedBitSet> {
        let index: BTreeMap<&HFSet, usize> = poset.codes().iter().enumerate().map(|(i, c)| (c, i)).collect();
        self.m
            .elements()
            .iter()
            .filter_map(|x| {
                let mut s = FixedBitSet::with_capacity(poset.len());
                for e in x.elements() {
                    s.insert(*index.get(e)?);
                }
                Some(s)
            })
            .collect()
    }

    fn poset_at(&self, p_code: &HFSet) -> Result<FinitePoset, GenericError> {
        if !self.contains(p_code) {
            return Err(GenericError::NotInModel(p_code.clone()));
        }
        Self::decode_poset(p_code)
    }
}

/// Every `D ∈ M` with `D ⊆ P` dense, in the order of `M`'s elements.
pub fn m_dense_family(m: &FiniteModel, p_code: &HFSet) -> Result<Vec<FixedBitSet>, GenericError> {
    let poset = m.poset_at(p_code)?;
    Ok(m.subsets_of(&poset).into_iter().filter(|d| poset.is_dense(d)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MGenericReport {
    pub poset: FinitePoset,
    /// Each dense set of `M`, as condition labels, with whether `G` meets it.
    pub dense_sets: Vec<(Vec<String>, bool)>,
    pub g: HFSet,
    pub g_in_m: bool,
    /// Whether `P` has the splitting property; without it an `M`-generic
    /// filter can lie in `M`.
    pub splitting: bool,
}

impl MGenericReport {
    pub fn all_met(&self) -> bool {
        self.dense_sets.iter().all(|(_, met)| *met)
    }
}

/// An `M`-generic filter on the poset coded by `p_code`, starting from the
/// condition labelled `start` (default: the maximum, else the first
/// condition in code order).
pub fn m_generic(
    m: &FiniteModel,
    p_code: &HFSet,
    start: Option<&str>,
) -> Result<(GenericFilter<usize>, MGenericReport), GenericError> {
    let poset = m.poset_at(p_code)?;
    let start = match start {
        Some(l) => poset
            .index_of(l)
            .ok_or_else(|| GenericError::UnknownCondition(l.to_string()))?,
        None => poset.maximum().unwrap_or(0),
    };
    let family = m_dense_family(m, p_code)?;
    let specs: Vec<DenseSpec<usize>> = family
        .iter()
        .enumerate()
        .map(|(i, d)| DenseSpec::from_subset(&poset, format!("D{i}"), d.clone()))
        .collect();
    let horizon = specs.len();
    let g = rs_generic(&poset, specs, start, horizon)?;
    let dense_sets = family
        .iter()
        .map(|d| {
            let labels = d.ones().map(|p| poset.label(p).to_string()).collect();
            (labels, meets_subset(&g, &poset, d))
        })
        .collect();
    let g_set = g.as_hfset(&poset);
    let report = MGenericReport {
        splitting: poset.has_splitting(),
        g_in_m: m.contains(&g_set),
        g: g_set,
        dense_sets,
        poset,
    };
    debug_assert!(report.all_met());
    Ok((g, report))
}

/// A total injection from `s` into ω, read off a generic for finite partial
/// injections with one totality refiner per member of `s`.
pub fn countability_witness(s: &HFSet, horizon: usize) -> Result<BTreeMap<HFSet, u64>, GenericError> {
    let poset = PartialFnPoset::countability_witness(s);
    let specs = crate::order::standard_refiners(&poset, &RefinerKind::Totality)?;
    let g = rs_generic(&poset, specs, PartialFn::empty(), horizon)?;
    Ok(g
        .union()
        .0
        .into_iter()
        .map(|(x, v)| (s.elements()[x as usize].clone(), v))
        .collect())
}
