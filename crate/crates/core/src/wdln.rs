//! Families of monads pairwise related by weak distributive laws satisfying
//! the Yang-Baxter condition, and everything built on top of them: the
//! fusion functors C_k, the global idempotent, the associative iterated
//! weak wreath product, the commuting monad cube and the n-ary
//! factorization checker.
//!
//! An object holds n+1 monads s₀,…,s_n (demimonads in general: fusion keeps
//! products unsplit on tensor carriers so that iteration theorems can be
//! tested as literal matrix equality) and laws λ_{i,j}: s_j⊗s_i → s_i⊗s_j
//! for i < j.

use crate::algebra::{check_demimonad, Demimonad};
use crate::field::FieldDesc;
use crate::linmap::{LinMap, Space};
use crate::report::CheckReport;
use crate::wdl::{
    check_monad_morphism, check_wdl, check_wdl_one_cell, lambda_bar, weak_wreath, Carrier,
    MonadMorphism, WdlError, WdlOneCell, WeakDistributiveLaw,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WdlnError {
    #[error("law ({i},{j}) has wrong shape: {detail}")]
    LawShape { i: usize, j: usize, detail: String },
    #[error("missing law for pair ({0},{1})")]
    MissingLaw(usize, usize),
    #[error("fusion index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("operation needs exactly three monads, object has {0}")]
    NotThreeMonads(usize),
    #[error("the two composite-law expressions disagree (invalid object)")]
    CompositeFormsDisagree,
    #[error("a 1-cell needs one structure map per monad: {got} maps for {monads} monads")]
    OneCellArity { got: usize, monads: usize },
    #[error(transparent)]
    Wdl(#[from] WdlError),
}

/// An (n+1)-tuple of monads with an upper-triangular family of laws.
#[derive(Clone, Debug)]
pub struct WdlNObject {
    monads: Vec<Demimonad>,
    laws: BTreeMap<(usize, usize), LinMap>,
}

impl WdlNObject {
    pub fn new(
        monads: Vec<Demimonad>,
        laws: BTreeMap<(usize, usize), LinMap>,
    ) -> Result<WdlNObject, WdlnError> {
        let count = monads.len();
        assert!(count >= 1, "need at least one monad");
        for i in 0..count {
            for j in i + 1..count {
                let lam = laws.get(&(i, j)).ok_or(WdlnError::MissingLaw(i, j))?;
                let dom = monads[j].dim() * monads[i].dim();
                let cod = monads[i].dim() * monads[j].dim();
                if lam.domain().dim() != dom || lam.codomain().dim() != cod {
                    return Err(WdlnError::LawShape {
                        i,
                        j,
                        detail: format!(
                            "expected {dom}→{cod}, got {}→{}",
                            lam.domain().dim(),
                            lam.codomain().dim()
                        ),
                    });
                }
            }
        }
        Ok(WdlNObject { monads, laws })
    }

    /// Object in which every law is the flip map (always valid).
    pub fn flips(monads: Vec<Demimonad>) -> WdlNObject {
        let field = monads[0].field();
        let mut laws = BTreeMap::new();
        for i in 0..monads.len() {
            for j in i + 1..monads.len() {
                laws.insert(
                    (i, j),
                    LinMap::flip(monads[j].space(), monads[i].space(), field),
                );
            }
        }
        WdlNObject { monads, laws }
    }

    /// Chain length n (monad count minus one).
    pub fn n(&self) -> usize {
        self.monads.len() - 1
    }

    pub fn monad_count(&self) -> usize {
        self.monads.len()
    }

    pub fn monads(&self) -> &[Demimonad] {
        &self.monads
    }

    pub fn monad(&self, i: usize) -> &Demimonad {
        &self.monads[i]
    }

    pub fn law(&self, i: usize, j: usize) -> &LinMap {
        assert!(i < j, "laws are indexed by i < j");
        &self.laws[&(i, j)]
    }

    pub fn laws(&self) -> &BTreeMap<(usize, usize), LinMap> {
        &self.laws
    }

    pub fn field(&self) -> FieldDesc {
        self.monads[0].field()
    }

    /// The law (i,j) packaged with its two monads (t = s_j, s = s_i).
    pub fn pair_law(&self, i: usize, j: usize) -> WeakDistributiveLaw {
        WeakDistributiveLaw::new(
            self.monads[j].clone(),
            self.monads[i].clone(),
            self.law(i, j).clone(),
        )
        .expect("shapes checked at construction")
    }

    /// Restriction to a strictly increasing list of monad indices.
    pub fn restrict(&self, indices: &[usize]) -> WdlNObject {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let monads = indices.iter().map(|&i| self.monads[i].clone()).collect();
        let mut laws = BTreeMap::new();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().skip(a + 1) {
                laws.insert((a, b), self.laws[&(i, j)].clone());
            }
        }
        WdlNObject { monads, laws }
    }

    pub fn total_space(&self) -> Space {
        let spaces: Vec<&Space> = self.monads.iter().map(|m| m.space()).collect();
        Space::tensor_all(&spaces)
    }

    fn seq_space(&self, seq: &[usize]) -> Space {
        let spaces: Vec<&Space> = seq.iter().map(|&l| self.monads[l].space()).collect();
        Space::tensor_all(&spaces)
    }

    /// One adjacent swap at `pos` of the labelled factor sequence, as a map
    /// on the whole tensor product.
    fn swap_step(&self, seq: &[usize], pos: usize) -> LinMap {
        let field = self.field();
        let (left_label, right_label) = (seq[pos], seq[pos + 1]);
        assert!(left_label > right_label, "swap must fix an inversion");
        let lam = self.law(right_label, left_label);
        let mut factors: Vec<LinMap> = Vec::new();
        for &l in &seq[..pos] {
            factors.push(LinMap::identity(self.monads[l].space(), field));
        }
        factors.push(lam.clone());
        for &l in &seq[pos + 2..] {
            factors.push(LinMap::identity(self.monads[l].space(), field));
        }
        let refs: Vec<&LinMap> = factors.iter().collect();
        LinMap::tensor_all(&refs)
    }

    /// Applies a user-chosen reduced schedule (list of swap positions) to
    /// the sequence; `None` if some step is not an inversion or the result
    /// is unsorted. Used to test schedule independence of the shuffle.
    pub fn apply_schedule(&self, seq: &[usize], schedule: &[usize]) -> Option<LinMap> {
        let mut seq = seq.to_vec();
        let mut acc = LinMap::identity(&self.seq_space(&seq), self.field());
        for &pos in schedule {
            if pos + 1 >= seq.len() || seq[pos] <= seq[pos + 1] {
                return None;
            }
            acc = acc.then(&self.swap_step(&seq, pos));
            seq.swap(pos, pos + 1);
        }
        if seq.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        Some(acc)
    }

    /// The canonical composite of laws rearranging the factor sequence
    /// `seq` into sorted order, by bubble schedule (leftmost inversion
    /// first). Any reduced schedule gives the same map by the Yang-Baxter
    /// condition; this one is the fixed choice.
    pub fn shuffle_to_sorted(&self, seq: &[usize]) -> LinMap {
        let mut seq = seq.to_vec();
        let mut acc = LinMap::identity(&self.seq_space(&seq), self.field());
        loop {
            let Some(pos) = (0..seq.len().saturating_sub(1)).find(|&p| seq[p] > seq[p + 1]) else {
                return acc;
            };
            acc = acc.then(&self.swap_step(&seq, pos));
            seq.swap(pos, pos + 1);
        }
    }

    /// The left-pointing arrow idempotent on s₀⊗…⊗s_m: insert η_m on the
    /// left, shuffle it home, multiply with μ_m.
    pub fn left_arrow(&self, m: usize) -> LinMap {
        assert!((1..self.monad_count()).contains(&m));
        let field = self.field();
        let labels: Vec<usize> = (0..=m).collect();
        let front = self.seq_space(&labels);
        let id_front = LinMap::identity(&front, field);
        let mut seq = vec![m];
        seq.extend(0..=m);
        let shuffle = self.shuffle_to_sorted(&seq);
        let heads: Vec<&Space> = (0..m).map(|l| self.monads[l].space()).collect();
        let id_heads = LinMap::identity(&Space::tensor_all(&heads), field);
        self.monads[m]
            .unit()
            .tensor(&id_front)
            .then(&shuffle)
            .then(&id_heads.tensor(self.monads[m].mul()))
    }
}

/// Verifies every demimonad, every pairwise law and every Yang-Baxter
/// hexagon of the object.
pub fn validate_object(o: &WdlNObject) -> CheckReport {
    let mut report = CheckReport::new();
    for (i, m) in o.monads.iter().enumerate() {
        report.absorb(&format!("monad[{i}]"), check_demimonad(m));
    }
    let count = o.monad_count();
    for i in 0..count {
        for j in i + 1..count {
            report.absorb(&format!("law[{i},{j}]"), check_wdl(&o.pair_law(i, j)));
        }
    }
    let field = o.field();
    for i in 0..count {
        for j in i + 1..count {
            for k in j + 1..count {
                let id = |l: usize| LinMap::identity(o.monads[l].space(), field);
                let lhs = o
                    .law(j, k)
                    .tensor(&id(i))
                    .then(&id(j).tensor(o.law(i, k)))
                    .then(&o.law(i, j).tensor(&id(k)));
                let rhs = id(k)
                    .tensor(o.law(i, j))
                    .then(&o.law(i, k).tensor(&id(j)))
                    .then(&id(i).tensor(o.law(j, k)));
                report.push_eq(&format!("yang_baxter[{i},{j},{k}]"), &lhs, &rhs);
            }
        }
    }
    report
}

/// The right-pointing arrow idempotent on s₀⊗s_p⊗s_q of a three-monad
/// object, for (p,q) ∈ {(1,2),(2,1)}: insert η₀ on the right, shuffle it
/// home, multiply with μ₀.
fn right_arrow_3(o: &WdlNObject, p: usize, q: usize) -> LinMap {
    let field = o.field();
    let id = |l: usize| LinMap::identity(o.monads[l].space(), field);
    let zero = &o.monads[0];
    id(0)
        .tensor(&id(p))
        .tensor(&id(q))
        .tensor(zero.unit())
        .then(&id(0).tensor(&id(p)).tensor(o.law(0, q)))
        .then(&id(0).tensor(o.law(0, p)).tensor(&id(q)))
        .then(&zero.mul().tensor(&id(p)).tensor(&id(q)))
}

/// The left-pointing arrow on s_k⊗s_l⊗s₂, for (k,l) ∈ {(0,1),(1,0)}.
fn left_arrow_3(o: &WdlNObject, k: usize, l: usize) -> LinMap {
    let field = o.field();
    let id = |m: usize| LinMap::identity(o.monads[m].space(), field);
    let two = &o.monads[2];
    two.unit()
        .tensor(&id(k))
        .tensor(&id(l))
        .tensor(&id(2))
        .then(&o.law(k, 2).tensor(&id(l)).tensor(&id(2)))
        .then(&id(k).tensor(o.law(l, 2)).tensor(&id(2)))
        .then(&id(k).tensor(&id(l)).tensor(two.mul()))
}

/// The two arrow idempotents (→λ₀₁₂, ←λ₀₁₂) of a three-monad object.
pub fn arrow_idempotents(o: &WdlNObject) -> Result<(LinMap, LinMap), WdlnError> {
    if o.monad_count() != 3 {
        return Err(WdlnError::NotThreeMonads(o.monad_count()));
    }
    Ok((right_arrow_3(o, 1, 2), left_arrow_3(o, 0, 1)))
}

/// Property suite for the arrow idempotents: both normalization families,
/// the two intertwining identities, the two absorption identities and the
/// four-fold equality defining λ̄₀₁₂.
pub fn arrow_identity_report(o: &WdlNObject) -> Result<CheckReport, WdlnError> {
    if o.monad_count() != 3 {
        return Err(WdlnError::NotThreeMonads(o.monad_count()));
    }
    let field = o.field();
    let id = |l: usize| LinMap::identity(o.monads[l].space(), field);
    let mut report = CheckReport::new();

    let bar01 = lambda_bar(&o.pair_law(0, 1))?;
    let bar02 = lambda_bar(&o.pair_law(0, 2))?;
    let bar12 = lambda_bar(&o.pair_law(1, 2))?;

    for (p, q) in [(1usize, 2usize), (2, 1)] {
        let arrow = right_arrow_3(o, p, q);
        let bar0p = if p < 2 { &bar01 } else { &bar02 };
        let tag = format!("right[0,{p},{q}]");
        report.push_eq(&format!("{tag}.idempotent"), &arrow.then(&arrow), &arrow);
        let pre = bar0p.tensor(&id(q)).then(&arrow);
        report.push_eq(&format!("{tag}.norm_pre"), &pre, &arrow);
        let post = arrow.then(&bar0p.tensor(&id(q)));
        report.push_eq(&format!("{tag}.norm_post"), &post, &arrow);
        // →λ_{0,p,q}∘(λ_{0,p}⊗q) = (λ_{0,p}⊗q)∘(p⊗λ̄_{0,q})
        let bar0q = if q < 2 { &bar01 } else { &bar02 };
        let lhs = o.law(0, p).tensor(&id(q)).then(&arrow);
        let rhs = id(p).tensor(bar0q).then(&o.law(0, p).tensor(&id(q)));
        report.push_eq(&format!("{tag}.absorb"), &lhs, &rhs);
    }
    // →λ₀₁₂∘(s₀⊗λ₁₂) = (s₀⊗λ₁₂)∘→λ₀₂₁
    let lhs = id(0).tensor(o.law(1, 2)).then(&right_arrow_3(o, 1, 2));
    let rhs = right_arrow_3(o, 2, 1).then(&id(0).tensor(o.law(1, 2)));
    report.push_eq("right.intertwine", &lhs, &rhs);

    for (k, l) in [(0usize, 1usize), (1, 0)] {
        let arrow = left_arrow_3(o, k, l);
        let barl2 = if l == 0 { &bar02 } else { &bar12 };
        let tag = format!("left[{k},{l},2]");
        report.push_eq(&format!("{tag}.idempotent"), &arrow.then(&arrow), &arrow);
        let pre = id(k).tensor(barl2).then(&arrow);
        report.push_eq(&format!("{tag}.norm_pre"), &pre, &arrow);
        let post = arrow.then(&id(k).tensor(barl2));
        report.push_eq(&format!("{tag}.norm_post"), &post, &arrow);
        // ←λ_{k,l,2}∘(k⊗λ_{l,2}) = (k⊗λ_{l,2})∘(λ̄_{k,2}⊗l)
        let bark2 = if k == 0 { &bar02 } else { &bar12 };
        let lhs = id(k).tensor(o.law(l, 2)).then(&arrow);
        let rhs = bark2.tensor(&id(l)).then(&id(k).tensor(o.law(l, 2)));
        report.push_eq(&format!("{tag}.absorb"), &lhs, &rhs);
    }
    // ←λ₀₁₂∘(λ₀₁⊗s₂) = (λ₀₁⊗s₂)∘←λ₁₀₂
    let lhs = o.law(0, 1).tensor(&id(2)).then(&left_arrow_3(o, 0, 1));
    let rhs = left_arrow_3(o, 1, 0).then(&o.law(0, 1).tensor(&id(2)));
    report.push_eq("left.intertwine", &lhs, &rhs);

    // the four expressions whose common value is λ̄₀₁₂
    let right = right_arrow_3(o, 1, 2);
    let left = left_arrow_3(o, 0, 1);
    let e1 = right.then(&left);
    let e2 = bar01.tensor(&id(2)).then(&left);
    let e3 = id(0).tensor(&bar12).then(&right);
    let e4 = left.then(&right);
    report.push_eq("triple_idem.first_second", &e1, &e2);
    report.push_eq("triple_idem.first_third", &e1, &e3);
    report.push_eq("triple_idem.first_fourth", &e1, &e4);
    Ok(report)
}

/// The global idempotent λ̄₀…ₙ on s₀⊗…⊗s_n: the pair idempotent λ̄₀₁ padded
/// to the full space, then the left arrows of increasing length.
pub fn iterated_idempotent(o: &WdlNObject) -> Result<LinMap, WdlnError> {
    let n = o.n();
    let field = o.field();
    if n == 0 {
        return Ok(o.monads[0].idem().clone());
    }
    let pad = |core: LinMap, upto: usize| -> LinMap {
        let mut acc = core;
        for l in upto + 1..o.monad_count() {
            acc = acc.tensor(&LinMap::identity(o.monads[l].space(), field));
        }
        acc
    };
    let mut acc = pad(lambda_bar(&o.pair_law(0, 1))?, 1);
    for m in 2..=n {
        acc = acc.then(&pad(o.left_arrow(m), m));
    }
    Ok(acc)
}

/// Fuses the monads at positions k-1 and k (1 ≤ k ≤ n) into their weak
/// wreath product, kept unsplit on the tensor carrier, and rebuilds the
/// laws around the fused monad.
pub fn functor_ck(o: &WdlNObject, k: usize) -> Result<WdlNObject, WdlnError> {
    let n = o.n();
    if k < 1 || k > n {
        return Err(WdlnError::IndexOutOfRange { k, n });
    }
    let (a, b) = (k - 1, k);
    let field = o.field();
    let pair = o.pair_law(a, b);
    let (fused, _, _) = weak_wreath(&pair)?;
    let bar = fused.idem().clone();
    let id = |l: usize| LinMap::identity(o.monads[l].space(), field);

    let mut monads = Vec::with_capacity(o.monad_count() - 1);
    for (m, monad) in o.monads.iter().enumerate() {
        if m == b {
            continue;
        }
        monads.push(if m == a { fused.clone() } else { monad.clone() });
    }
    let old = |m: usize| if m < a { m } else { m + 1 };

    let mut laws = BTreeMap::new();
    for m1 in 0..monads.len() {
        for m2 in m1 + 1..monads.len() {
            let law = if m1 != a && m2 != a {
                o.law(old(m1), old(m2)).clone()
            } else if m2 == a {
                // s_i below the fused pair: (λ_{i,a}⊗s_b)∘(s_a⊗λ_{i,b})∘(λ̄⊗s_i)
                let i = m1;
                bar.tensor(&id(i))
                    .then(&id(a).tensor(o.law(i, b)))
                    .then(&o.law(i, a).tensor(&id(b)))
            } else {
                // s_j above the fused pair: (s_a⊗λ_{b,j})∘(λ_{a,j}⊗s_b)∘(s_j⊗λ̄)
                let j = old(m2);
                id(j)
                    .tensor(&bar)
                    .then(&o.law(a, j).tensor(&id(b)))
                    .then(&id(a).tensor(o.law(b, j)))
            };
            laws.insert((m1, m2), law);
        }
    }
    WdlNObject::new(monads, laws)
}

/// A 1-cell of the n-fold structure: one carrier with a structure map per
/// monad.
#[derive(Clone, Debug)]
pub struct WdlNOneCell {
    carrier: Carrier,
    xis: Vec<LinMap>,
}

impl WdlNOneCell {
    pub fn new(carrier: Carrier, xis: Vec<LinMap>) -> WdlNOneCell {
        WdlNOneCell { carrier, xis }
    }

    /// The identity 1-cell on an object.
    pub fn identity(o: &WdlNObject) -> WdlNOneCell {
        WdlNOneCell {
            carrier: Carrier::trivial(o.field()),
            xis: o.monads.iter().map(|m| m.idem().clone()).collect(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn xis(&self) -> &[LinMap] {
        &self.xis
    }

    pub fn xi(&self, i: usize) -> &LinMap {
        &self.xis[i]
    }
}

/// Verifies that the 1-cell is compatible with every pair of laws.
pub fn validate_one_cell(
    c: &WdlNOneCell,
    source: &WdlNObject,
    target: &WdlNObject,
) -> Result<CheckReport, WdlnError> {
    if c.xis.len() != source.monad_count() {
        return Err(WdlnError::OneCellArity {
            got: c.xis.len(),
            monads: source.monad_count(),
        });
    }
    let mut report = CheckReport::new();
    for i in 0..source.monad_count() {
        for j in i + 1..source.monad_count() {
            let cell = WdlOneCell::new(c.carrier.clone(), c.xis[j].clone(), c.xis[i].clone());
            report.absorb(
                &format!("pair[{i},{j}]"),
                check_wdl_one_cell(&cell, &source.pair_law(i, j), &target.pair_law(i, j)),
            );
        }
    }
    Ok(report)
}

/// The 1-cell image under C_k: the structure maps at k-1 and k fuse into
/// (v⊗λ̄)∘(ξ_{k-1}⊗s_k)∘(s′_{k-1}⊗ξ_k).
pub fn functor_ck_one_cell(
    c: &WdlNOneCell,
    source: &WdlNObject,
    k: usize,
) -> Result<WdlNOneCell, WdlnError> {
    let n = source.n();
    if k < 1 || k > n {
        return Err(WdlnError::IndexOutOfRange { k, n });
    }
    let (a, b) = (k - 1, k);
    let field = source.field();
    let bar = lambda_bar(&source.pair_law(a, b))?;
    let id_v = LinMap::identity(c.carrier.space(), field);
    // ξ_a: s′_a⊗v → v⊗s_a carries the primed space in its domain; peel the
    // carrier factors off to recover it
    let xa_dom = c.xis[a].domain().clone();
    let carrier_rank = c.carrier.space().shape().len();
    let prime_a = Space::new(xa_dom.shape()[..xa_dom.shape().len() - carrier_rank].to_vec());
    let id_prime_a = LinMap::identity(&prime_a, field);
    let id_sb = LinMap::identity(source.monads[b].space(), field);
    let fused_xi = id_prime_a
        .tensor(&c.xis[b])
        .then(&c.xis[a].tensor(&id_sb))
        .then(&id_v.tensor(&bar));
    let mut xis = Vec::with_capacity(c.xis.len() - 1);
    for (m, xi) in c.xis.iter().enumerate() {
        if m == b {
            continue;
        }
        xis.push(if m == a { fused_xi.clone() } else { xi.clone() });
    }
    Ok(WdlNOneCell {
        carrier: c.carrier.clone(),
        xis,
    })
}

/// The composite law λ₀…ₙ₋₁,ₙ between the wreath of the first n monads and
/// s_n. Both displayed expressions are computed and must agree.
pub fn composite_law(o: &WdlNObject) -> Result<WeakDistributiveLaw, WdlnError> {
    let n = o.n();
    assert!(n >= 1, "composite law needs at least two monads");
    let field = o.field();
    let head_indices: Vec<usize> = (0..n).collect();
    let head = o.restrict(&head_indices);
    let head_bar = iterated_idempotent(&head)?;
    let mut seq = vec![n];
    seq.extend(0..n);
    let shuffle = o.shuffle_to_sorted(&seq);
    let id_sn = LinMap::identity(o.monads[n].space(), field);
    let main = id_sn.tensor(&head_bar).then(&shuffle);
    let alt = shuffle.then(&iterated_idempotent(o)?);
    if !main.same_map(&alt) {
        return Err(WdlnError::CompositeFormsDisagree);
    }
    let block = iterated_wreath(&head)?;
    Ok(WeakDistributiveLaw::new(o.monads[n].clone(), block, main)?)
}

/// The iterated weak wreath product demimonad on s₀⊗…⊗s_n.
pub fn iterated_wreath(o: &WdlNObject) -> Result<Demimonad, WdlnError> {
    let n = o.n();
    if n == 0 {
        return Ok(o.monads[0].clone());
    }
    let bar = iterated_idempotent(o)?;
    let total = o.total_space();

    let mut seq: Vec<usize> = (0..=n).collect();
    seq.extend(0..=n);
    let shuffle = o.shuffle_to_sorted(&seq);
    let mus: Vec<&LinMap> = o.monads.iter().map(|m| m.mul()).collect();
    let mul = shuffle
        .then(&LinMap::tensor_all(&mus))
        .then(&bar)
        .with_domain(total.tensor(&total));

    let etas: Vec<&LinMap> = o.monads.iter().rev().map(|m| m.unit()).collect();
    let rev_seq: Vec<usize> = (0..=n).rev().collect();
    let unit = LinMap::tensor_all(&etas)
        .then(&o.shuffle_to_sorted(&rev_seq))
        .then(&bar);

    Ok(Demimonad::new(total, mul, unit, bar))
}

fn composite_sequences(n: usize) -> Vec<Vec<usize>> {
    // sequences (k_n, …, k_1), k_i ∈ 1..=i, applied left to right
    let mut seqs: Vec<Vec<usize>> = vec![Vec::new()];
    for i in (1..=n).rev() {
        let mut next = Vec::new();
        for seq in &seqs {
            for k in 1..=i {
                let mut s = seq.clone();
                s.push(k);
                next.push(s);
            }
        }
        seqs = next;
    }
    seqs
}

/// Runs every n-fold fusion composite and asserts that all of them produce
/// the same demimonad as [`iterated_wreath`], as literal matrix equality.
///
/// All n! composites are enumerated for n ≤ 4; beyond that a deterministic
/// sample keeps the cost finite.
pub fn check_associativity(o: &WdlNObject) -> Result<CheckReport, WdlnError> {
    let n = o.n();
    let reference = iterated_wreath(o)?;
    let mut report = CheckReport::new();
    let sequences = if n <= 4 {
        composite_sequences(n)
    } else {
        let mut sample = Vec::new();
        for suffix in composite_sequences(4) {
            let mut s: Vec<usize> = (5..=n)
                .rev()
                .map(|i| if i % 2 == 0 { 1 } else { i })
                .collect();
            s.extend(suffix);
            sample.push(s);
        }
        sample
    };
    for seq in sequences {
        let mut cur = o.clone();
        for &k in &seq {
            cur = functor_ck(&cur, k)?;
        }
        let result = &cur.monads()[0];
        let tag = format!(
            "composite[{}]",
            seq.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        report.push_eq(&format!("{tag}.mul"), result.mul(), reference.mul());
        report.push_eq(&format!("{tag}.unit"), result.unit(), reference.unit());
        report.push_eq(&format!("{tag}.idem"), result.idem(), reference.idem());
    }
    Ok(report)
}

/// The commutative cube of wreath vertices and unit-insertion edges.
///
/// Vertices are indexed by subsets of {0,…,n} as bitmasks; the edge at
/// (p, i) is the linear map S_p → S_{p∪{i}} inserting η_i and normalizing
/// by the vertex idempotent.
#[derive(Clone, Debug)]
pub struct MonadCube {
    site_count: usize,
    vertices: BTreeMap<u32, Demimonad>,
    edges: BTreeMap<(u32, usize), LinMap>,
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn mask_label(mask: u32) -> String {
    if mask == 0 {
        return "empty".to_string();
    }
    mask_indices(mask)
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

impl MonadCube {
    pub fn site_count(&self) -> usize {
        self.site_count
    }

    pub fn vertex(&self, mask: u32) -> &Demimonad {
        &self.vertices[&mask]
    }

    pub fn edge(&self, mask: u32, i: usize) -> &LinMap {
        &self.edges[&(mask, i)]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.site_count) - 1
    }

    /// The composite of edges from `from` that inserts every index of
    /// `add`, in increasing order: S_from → S_{from|add}.
    pub fn phi_composite(&self, from: u32, add: u32) -> LinMap {
        debug_assert_eq!(from & add, 0);
        let field = self.vertices[&from].field();
        let mut acc = LinMap::identity(self.vertices[&from].space(), field);
        let mut cur = from;
        for i in mask_indices(add) {
            acc = acc.then(&self.edges[&(cur, i)]);
            cur |= 1 << i;
        }
        acc
    }
}

/// Builds the cube of a valid object: each vertex is the iterated wreath of
/// the corresponding sub-family, each edge a normalized unit insertion.
pub fn build_cube(o: &WdlNObject) -> Result<MonadCube, WdlnError> {
    let count = o.monad_count();
    let field = o.field();
    let full: u32 = (1 << count) - 1;
    let mut vertices = BTreeMap::new();
    for mask in 0..=full {
        let vertex = if mask == 0 {
            Demimonad::trivial(field)
        } else {
            iterated_wreath(&o.restrict(&mask_indices(mask)))?
        };
        vertices.insert(mask, vertex);
    }
    let mut edges = BTreeMap::new();
    for mask in 0..=full {
        for i in 0..count {
            if mask & (1 << i) != 0 {
                continue;
            }
            let target_mask = mask | (1 << i);
            let target = &vertices[&target_mask];
            let mut factors: Vec<LinMap> = Vec::new();
            for j in mask_indices(target_mask) {
                if j == i {
                    factors.push(o.monad(i).unit().clone());
                } else {
                    factors.push(LinMap::identity(o.monad(j).space(), field));
                }
            }
            let refs: Vec<&LinMap> = factors.iter().collect();
            let insertion = LinMap::tensor_all(&refs);
            edges.insert((mask, i), insertion.then(target.idem()));
        }
    }
    Ok(MonadCube {
        site_count: count,
        vertices,
        edges,
    })
}

/// Verifies that every edge is a trivial-carrier monad morphism and every
/// square face commutes.
pub fn verify_cube(cube: &MonadCube) -> CheckReport {
    let mut report = CheckReport::new();
    let field = cube.vertices[&0].field();
    let full = cube.full_mask();
    for (&(mask, i), phi) in &cube.edges {
        let source = cube.vertex(mask | (1 << i)).clone();
        let target = cube.vertex(mask).clone();
        let m = MonadMorphism::new(source, target, Carrier::trivial(field), phi.clone());
        report.absorb(
            &format!("edge[{}+{i}]", mask_label(mask)),
            check_monad_morphism(&m),
        );
    }
    for mask in 0..=full {
        for i in mask_indices(!mask & full) {
            for j in mask_indices(!mask & full) {
                if j <= i {
                    continue;
                }
                let via_i = cube.edge(mask, i).then(cube.edge(mask | (1 << i), j));
                let via_j = cube.edge(mask, j).then(cube.edge(mask | (1 << j), i));
                report.push_eq(
                    &format!("face[{}+{i}+{j}]", mask_label(mask)),
                    &via_i,
                    &via_j,
                );
            }
        }
    }
    report
}

/// A cube enriched with bimodule sections ι_{p,q}: S_{p+q} → S_p⊗S_q for
/// every ordered pair of nonempty subsets with max(p) < min(q).
#[derive(Clone, Debug)]
pub struct FactorizationData {
    cube: MonadCube,
    sections: BTreeMap<(u32, u32), LinMap>,
}

fn ordered_pairs(count: usize) -> Vec<(u32, u32)> {
    let full: u32 = (1 << count) - 1;
    let mut pairs = Vec::new();
    for p in 1..=full {
        for q in 1..=full {
            if p & q != 0 {
                continue;
            }
            let pmax = 31 - p.leading_zeros();
            let qmin = q.trailing_zeros();
            if pmax < qmin {
                pairs.push((p, q));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

impl FactorizationData {
    /// The canonical sections: ι_{p,q} is the idempotent of the vertex at
    /// p∪q, read as a map into S_p⊗S_q (the same underlying space).
    pub fn canonical(cube: MonadCube) -> FactorizationData {
        let mut sections = BTreeMap::new();
        for (p, q) in ordered_pairs(cube.site_count) {
            let vertex = cube.vertex(p | q);
            let iota = vertex
                .idem()
                .clone()
                .with_codomain(cube.vertex(p).space().tensor(cube.vertex(q).space()));
            sections.insert((p, q), iota);
        }
        FactorizationData { cube, sections }
    }

    pub fn cube(&self) -> &MonadCube {
        &self.cube
    }

    pub fn section(&self, p: u32, q: u32) -> &LinMap {
        &self.sections[&(p, q)]
    }

    /// Replaces one section (for negative tests).
    pub fn set_section(&mut self, p: u32, q: u32, iota: LinMap) {
        self.sections.insert((p, q), iota);
    }
}

/// The n-ary factorization conditions: trivial bottom vertex, bimodule
/// sections splitting every π_{p,q}, the coassociativity square of the
/// sections and the two mixed prisms.
pub fn nary_factorization_check(f: &FactorizationData) -> CheckReport {
    let mut report = CheckReport::new();
    let cube = &f.cube;
    let field = cube.vertices[&0].field();

    // (a) the empty vertex is the trivial monad
    let bottom = cube.vertex(0);
    report.push_flag(
        "a.trivial_bottom",
        bottom.dim() == 1 && bottom.idem().same_map(&bottom.identity()),
        None,
    );

    // (b) every section splits its π and is a bimodule map
    for (p, q) in ordered_pairs(cube.site_count) {
        let tag = format!("b[{}|{}]", mask_label(p), mask_label(q));
        let iota = f.section(p, q);
        let vertex = cube.vertex(p | q);
        let phi_from_p = cube.phi_composite(p, q);
        let phi_from_q = cube.phi_composite(q, p);
        let pi = phi_from_p.tensor(&phi_from_q).then(vertex.mul());
        report.push_eq(&format!("{tag}.section"), &iota.then(&pi), vertex.idem());

        let id_p = LinMap::identity(cube.vertex(p).space(), field);
        let id_q = LinMap::identity(cube.vertex(q).space(), field);
        let id_v = vertex.identity();
        let left_action = phi_from_p.tensor(&id_v).then(vertex.mul());
        let lhs = left_action.then(iota);
        let rhs = id_p.tensor(iota).then(&cube.vertex(p).mul().tensor(&id_q));
        report.push_eq(&format!("{tag}.left_module"), &lhs, &rhs);
        let right_action = id_v.tensor(&phi_from_q).then(vertex.mul());
        let lhs = right_action.then(iota);
        let rhs = iota.tensor(&id_q).then(&id_p.tensor(cube.vertex(q).mul()));
        report.push_eq(&format!("{tag}.right_module"), &lhs, &rhs);
    }

    // (c) triple coherence
    let full = cube.full_mask();
    let mut triples = Vec::new();
    for p in 1..=full {
        for q in 1..=full {
            for r in 1..=full {
                if p & q != 0 || p & r != 0 || q & r != 0 {
                    continue;
                }
                let pmax = 31 - p.leading_zeros();
                let qmin = q.trailing_zeros();
                let qmax = 31 - q.leading_zeros();
                let rmin = r.trailing_zeros();
                if pmax < qmin && qmax < rmin {
                    triples.push((p, q, r));
                }
            }
        }
    }
    triples.sort_unstable();
    for (p, q, r) in triples {
        let tag = format!("c[{}|{}|{}]", mask_label(p), mask_label(q), mask_label(r));
        let id_p = LinMap::identity(cube.vertex(p).space(), field);
        let id_q = LinMap::identity(cube.vertex(q).space(), field);
        let id_r = LinMap::identity(cube.vertex(r).space(), field);

        // coassociativity of the sections
        let lhs = f.section(p | q, r).then(&f.section(p, q).tensor(&id_r));
        let rhs = f.section(p, q | r).then(&id_p.tensor(f.section(q, r)));
        report.push_eq(&format!("{tag}.coassoc"), &lhs, &rhs);

        // first prism: S_{q+r}⊗S_p → S_p⊗S_q⊗S_r
        let lhs = cube
            .phi_composite(q | r, p)
            .tensor(&cube.phi_composite(p, q | r))
            .then(cube.vertex(p | q | r).mul())
            .then(f.section(p, q | r))
            .then(&id_p.tensor(f.section(q, r)));
        let rhs = f
            .section(q, r)
            .tensor(&id_p)
            .then(
                &id_q
                    .tensor(&cube.phi_composite(r, p))
                    .tensor(&cube.phi_composite(p, r)),
            )
            .then(&id_q.tensor(cube.vertex(p | r).mul()))
            .then(&id_q.tensor(f.section(p, r)))
            .then(
                &cube
                    .phi_composite(q, p)
                    .tensor(&cube.phi_composite(p, q))
                    .tensor(&id_r),
            )
            .then(&cube.vertex(p | q).mul().tensor(&id_r))
            .then(&f.section(p, q).tensor(&id_r));
        report.push_eq(&format!("{tag}.prism_left"), &rhs, &lhs);

        // second prism: S_r⊗S_{p+q} → S_p⊗S_q⊗S_r
        let lhs = cube
            .phi_composite(r, p | q)
            .tensor(&cube.phi_composite(p | q, r))
            .then(cube.vertex(p | q | r).mul())
            .then(f.section(p | q, r))
            .then(&f.section(p, q).tensor(&id_r));
        let rhs = id_r
            .tensor(f.section(p, q))
            .then(
                &cube
                    .phi_composite(r, p)
                    .tensor(&cube.phi_composite(p, r))
                    .tensor(&id_q),
            )
            .then(&cube.vertex(p | r).mul().tensor(&id_q))
            .then(&f.section(p, r).tensor(&id_q))
            .then(
                &id_p
                    .tensor(&cube.phi_composite(r, q))
                    .tensor(&cube.phi_composite(q, r)),
            )
            .then(&id_p.tensor(cube.vertex(q | r).mul()))
            .then(&id_p.tensor(f.section(q, r)));
        report.push_eq(&format!("{tag}.prism_right"), &rhs, &lhs);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::split_demimonad;
    use crate::bialgebra::{
        canonical_lambda, canonical_lambda_hat, cyclic_group_table, dual, group_algebra,
        pair_groupoid_algebra,
    };
    use proptest::prelude::*;

    const Q: FieldDesc = FieldDesc::Rational;

    fn z2_monad() -> Demimonad {
        let h = group_algebra(&cyclic_group_table(2), Q).unwrap();
        Demimonad::from_algebra(h.algebra())
    }

    fn strict_chain(count: usize) -> WdlNObject {
        WdlNObject::flips(vec![z2_monad(); count])
    }

    /// The alternating H/Ĥ object of the M₂ pair groupoid, built by hand.
    pub(crate) fn m2_chain(count: usize) -> WdlNObject {
        let pair = dual(&pair_groupoid_algebra(2, Q)).unwrap();
        let h = Demimonad::from_algebra(pair.h.algebra());
        let hat = Demimonad::from_algebra(pair.hat.algebra());
        let lam = canonical_lambda(&pair);
        let lam_hat = canonical_lambda_hat(&pair);
        let monads: Vec<Demimonad> = (0..count)
            .map(|i| if i % 2 == 0 { h.clone() } else { hat.clone() })
            .collect();
        let mut laws = BTreeMap::new();
        for i in 0..count {
            for j in i + 1..count {
                let law = if j - i > 1 {
                    LinMap::flip(monads[j].space(), monads[i].space(), Q)
                } else if i % 2 == 1 {
                    lam.clone()
                } else {
                    lam_hat.clone()
                };
                laws.insert((i, j), law);
            }
        }
        WdlNObject::new(monads, laws).unwrap()
    }

    #[test]
    fn flip_object_validates() {
        let o = strict_chain(3);
        let r = validate_object(&o);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn m2_chain_validates() {
        let o = m2_chain(3);
        let r = validate_object(&o);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn swapping_adjacent_laws_breaks_yang_baxter() {
        let o = m2_chain(3);
        let mut laws = o.laws().clone();
        let l01 = laws[&(0, 1)].clone();
        let l12 = laws[&(1, 2)].clone();
        laws.insert((0, 1), l12.with_domain(Space::new(vec![4, 4])));
        laws.insert((1, 2), l01.with_domain(Space::new(vec![4, 4])));
        let broken = WdlNObject::new(o.monads().to_vec(), laws).unwrap();
        let r = validate_object(&broken);
        assert!(!r.passed());
    }

    #[test]
    fn strict_arrows_are_identities() {
        let o = strict_chain(3);
        let (right, left) = arrow_idempotents(&o).unwrap();
        let id = LinMap::identity(&o.total_space(), Q);
        assert!(right.same_map(&id));
        assert!(left.same_map(&id));
        let r = arrow_identity_report(&o).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn m2_arrow_identities_hold() {
        let o = m2_chain(3);
        let r = arrow_identity_report(&o).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn iterated_idempotent_degenerates_to_pair_idempotent() {
        let o = m2_chain(2);
        let bar = iterated_idempotent(&o).unwrap();
        let pair_bar = lambda_bar(&o.pair_law(0, 1)).unwrap();
        assert!(bar.same_map(&pair_bar));
    }

    #[test]
    fn strict_iterated_idempotent_is_identity() {
        let o = strict_chain(4);
        let bar = iterated_idempotent(&o).unwrap();
        assert!(bar.same_map(&LinMap::identity(&o.total_space(), Q)));
    }

    #[test]
    fn iterated_idempotent_is_idempotent_and_ck_invariant() {
        let o = m2_chain(3);
        let bar = iterated_idempotent(&o).unwrap();
        assert!(bar.then(&bar).same_map(&bar));
        for k in 1..=2 {
            let fused = functor_ck(&o, k).unwrap();
            let fused_bar = iterated_idempotent(&fused).unwrap();
            assert!(bar.same_map(&fused_bar), "C_{k} changed the idempotent");
        }
    }

    #[test]
    fn n1_iterated_wreath_matches_binary_weak_wreath() {
        let o = m2_chain(2);
        let d = iterated_wreath(&o).unwrap();
        let (w, _, _) = weak_wreath(&o.pair_law(0, 1)).unwrap();
        assert!(d.mul().same_map(w.mul()));
        assert!(d.unit().same_map(w.unit()));
        assert!(d.idem().same_map(w.idem()));
    }

    #[test]
    fn strict_triple_wreath_has_full_dimension() {
        let o = strict_chain(3);
        let d = iterated_wreath(&o).unwrap();
        assert!(check_demimonad(&d).passed());
        let (alg, _, _) = split_demimonad(&d).unwrap();
        assert_eq!(alg.dim(), 8);
    }

    #[test]
    fn composite_law_agrees_with_its_alternate_form() {
        for o in [strict_chain(3), m2_chain(3)] {
            let law = composite_law(&o).unwrap();
            let r = check_wdl(&law);
            assert!(r.passed(), "{r}");
            let its_bar = lambda_bar(&law).unwrap();
            assert!(its_bar.same_map(&iterated_idempotent(&o).unwrap()));
        }
    }

    #[test]
    fn associativity_on_strict_and_m2_triples() {
        for o in [strict_chain(3), m2_chain(3)] {
            let r = check_associativity(&o).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn fusing_a_strict_flip_object_gives_flip_laws() {
        let o = strict_chain(3);
        let fused = functor_ck(&o, 1).unwrap();
        // laws touching the fused monad are flips of the fused spaces
        let expected_01 = LinMap::flip(fused.monad(1).space(), fused.monad(0).space(), Q);
        assert!(fused.law(0, 1).same_map(&expected_01));
        let r = validate_object(&fused);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn flip_carrier_one_cell_on_a_strict_object() {
        // for strict laws the flip itself is a structure map, so a copy of
        // the monad space works as a nontrivial carrier
        let o = strict_chain(3);
        let carrier_space = o.monad(0).space().clone();
        let carrier = Carrier::new(carrier_space.clone(), LinMap::identity(&carrier_space, Q));
        let xis: Vec<LinMap> = (0..3)
            .map(|i| LinMap::flip(o.monad(i).space(), &carrier_space, Q))
            .collect();
        let cell = WdlNOneCell::new(carrier, xis);
        let r = validate_one_cell(&cell, &o, &o).unwrap();
        assert!(r.passed(), "{r}");
        let fused_obj = functor_ck(&o, 2).unwrap();
        let fused_cell = functor_ck_one_cell(&cell, &o, 2).unwrap();
        let r = validate_one_cell(&fused_cell, &fused_obj, &fused_obj).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn fused_one_cell_still_validates() {
        let o = m2_chain(3);
        let cell = WdlNOneCell::identity(&o);
        let r = validate_one_cell(&cell, &o, &o).unwrap();
        assert!(r.passed(), "{r}");
        for k in 1..=2 {
            let fused_obj = functor_ck(&o, k).unwrap();
            let fused_cell = functor_ck_one_cell(&cell, &o, k).unwrap();
            let r = validate_one_cell(&fused_cell, &fused_obj, &fused_obj).unwrap();
            assert!(r.passed(), "k={k}:\n{r}");
        }
    }

    #[test]
    fn cube_of_m2_pair_commutes() {
        let o = m2_chain(2);
        let cube = build_cube(&o).unwrap();
        let r = verify_cube(&cube);
        assert!(r.passed(), "{r}");
        let f = FactorizationData::canonical(cube);
        let r = nary_factorization_check(&f);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrupted_section_fails_condition_b() {
        let o = m2_chain(2);
        let cube = build_cube(&o).unwrap();
        let mut f = FactorizationData::canonical(cube);
        let iota = f
            .section(1, 2)
            .scale(&crate::field::Scalar::from_integer(Q, 2));
        f.set_section(1, 2, iota);
        let r = nary_factorization_check(&f);
        assert!(r
            .failures()
            .any(|i| i.name.starts_with("b[") && i.name.ends_with(".section")));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        // any reduced schedule agrees with the canonical bubble shuffle
        #[test]
        fn shuffle_schedule_independence(choices in proptest::collection::vec(0usize..6, 24)) {
            let o = m2_chain(3);
            let seq = vec![2usize, 1, 0];
            let canonical = o.shuffle_to_sorted(&seq);
            // drive a random reduced schedule from the choice stream
            let mut work = seq.clone();
            let mut schedule = Vec::new();
            let mut stream = choices.into_iter();
            loop {
                let inversions: Vec<usize> =
                    (0..work.len() - 1).filter(|&p| work[p] > work[p + 1]).collect();
                if inversions.is_empty() {
                    break;
                }
                let pick = stream.next().unwrap_or(0) % inversions.len();
                let pos = inversions[pick];
                schedule.push(pos);
                work.swap(pos, pos + 1);
            }
            let alternative = o.apply_schedule(&seq, &schedule).expect("reduced schedule");
            prop_assert!(alternative.same_map(&canonical));
        }
    }
}
