//! Spin chains over a dual pair of weak bialgebras.
//!
//! Sites 0…n alternately carry H and Ĥ; adjacent sites interact through the
//! canonical laws of the dual pair, distant sites through the flip. The
//! iterated weak wreath product of the chain is the algebra of observables
//! localized in the interval [0, n].

use crate::algebra::{split_demimonad, Algebra, AlgebraError, Demimonad};
use crate::bialgebra::{
    canonical_lambda, canonical_lambda_hat, check_weak_bialgebra, dual, BialgebraError, DualPair,
    WeakBialgebra,
};
use crate::linmap::LinMap;
use crate::report::CheckReport;
use crate::wdl::lambda_bar;
use crate::wdln::{iterated_idempotent, iterated_wreath, WdlNObject, WdlnError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpinChainError {
    #[error("the input weak bialgebra fails its axioms:\n{0}")]
    AxiomFailure(CheckReport),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Wdln(#[from] WdlnError),
    #[error("the two-layer idempotent disagrees with the general construction (engine bug)")]
    MismatchWithGeneralFormula,
}

/// Which of H and Ĥ sits on the even sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SiteParity {
    /// Even sites carry H, odd sites carry Ĥ.
    #[default]
    EvenCarriesAlgebra,
    /// Even sites carry Ĥ, odd sites carry H.
    EvenCarriesDual,
}

impl SiteParity {
    pub fn describe(&self) -> &'static str {
        match self {
            SiteParity::EvenCarriesAlgebra => "even sites carry H, odd sites carry the dual",
            SiteParity::EvenCarriesDual => "even sites carry the dual, odd sites carry H",
        }
    }
}

/// A chain specification: the weak bialgebra, the last site index n and the
/// parity convention.
#[derive(Clone, Debug)]
pub struct SpinChainSpec {
    h: WeakBialgebra,
    n: usize,
    parity: SiteParity,
}

impl SpinChainSpec {
    pub fn new(h: WeakBialgebra, n: usize) -> SpinChainSpec {
        SpinChainSpec {
            h,
            n,
            parity: SiteParity::default(),
        }
    }

    pub fn with_parity(mut self, parity: SiteParity) -> SpinChainSpec {
        self.parity = parity;
        self
    }

    pub fn h(&self) -> &WeakBialgebra {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> SiteParity {
        self.parity
    }
}

fn chain_pair(spec: &SpinChainSpec) -> Result<DualPair, SpinChainError> {
    let report = check_weak_bialgebra(&spec.h);
    if !report.passed() {
        return Err(SpinChainError::AxiomFailure(report.report));
    }
    Ok(dual(&spec.h)?)
}

/// Builds the length-(n+1) chain object: alternating monads, canonical laws
/// between neighbours, flips between distant sites.
pub fn build_spin_chain(spec: &SpinChainSpec) -> Result<WdlNObject, SpinChainError> {
    let pair = chain_pair(spec)?;
    let field = spec.h.field();
    let h_monad = Demimonad::from_algebra(pair.h.algebra());
    let hat_monad = Demimonad::from_algebra(pair.hat.algebra());
    let lam = canonical_lambda(&pair);
    let lam_hat = canonical_lambda_hat(&pair);
    let even_is_h = spec.parity == SiteParity::EvenCarriesAlgebra;

    let count = spec.n + 1;
    let monads: Vec<Demimonad> = (0..count)
        .map(|i| {
            if (i % 2 == 0) == even_is_h {
                h_monad.clone()
            } else {
                hat_monad.clone()
            }
        })
        .collect();
    let mut laws = BTreeMap::new();
    for i in 0..count {
        for j in i + 1..count {
            let site_i_is_h = (i % 2 == 0) == even_is_h;
            let law = if j - i > 1 {
                LinMap::flip(monads[j].space(), monads[i].space(), field)
            } else if site_i_is_h {
                // s_i = H, s_{i+1} = Ĥ: the law is Ĥ⊗H → H⊗Ĥ
                lam_hat.clone()
            } else {
                // s_i = Ĥ, s_{i+1} = H: the law is H⊗Ĥ → Ĥ⊗H
                lam.clone()
            };
            laws.insert((i, j), law);
        }
    }
    Ok(WdlNObject::new(monads, laws)?)
}

/// The observable algebra of the interval [0, n]: the iterated weak wreath
/// product of the chain, split to an honest algebra.
pub fn observable_algebra(spec: &SpinChainSpec) -> Result<(Algebra, usize), SpinChainError> {
    let chain = build_spin_chain(spec)?;
    let wreath = iterated_wreath(&chain)?;
    let (alg, _, _) = split_demimonad(&wreath)?;
    let dim = alg.dim();
    Ok((alg, dim))
}

/// One layer of disjoint adjacent pair idempotents starting at `start`
/// (0 for the even layer, 1 for the odd layer); uncovered edge sites carry
/// identities.
fn pair_layer(chain: &WdlNObject, start: usize) -> Result<LinMap, SpinChainError> {
    let field = chain.field();
    let mut factors: Vec<LinMap> = Vec::new();
    if start == 1 {
        factors.push(LinMap::identity(chain.monad(0).space(), field));
    }
    let mut i = start;
    while i + 1 < chain.monad_count() {
        factors.push(lambda_bar(&chain.pair_law(i, i + 1)).map_err(WdlnError::from)?);
        i += 2;
    }
    if i < chain.monad_count() {
        factors.push(LinMap::identity(chain.monad(i).space(), field));
    }
    let refs: Vec<&LinMap> = factors.iter().collect();
    Ok(LinMap::tensor_all(&refs))
}

/// The explicit two-layer idempotent of the chain: all even-pair
/// idempotents at once, then all odd-pair idempotents. Must coincide with
/// the general iterated construction; a mismatch signals an engine bug.
pub fn explicit_chain_idempotent(spec: &SpinChainSpec) -> Result<LinMap, SpinChainError> {
    let chain = build_spin_chain(spec)?;
    let even_layer = pair_layer(&chain, 0)?;
    let result = if spec.n == 0 {
        even_layer
    } else {
        let odd_layer = pair_layer(&chain, 1)?;
        even_layer.then(&odd_layer)
    };
    let general = iterated_idempotent(&chain)?;
    if !result.same_map(&general) {
        return Err(SpinChainError::MismatchWithGeneralFormula);
    }
    Ok(result)
}
