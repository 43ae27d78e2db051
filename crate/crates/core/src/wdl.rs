//! Weak distributive laws λ: t⊗s → s⊗t between two (demi)monads.
//!
//! The checker verifies the two multiplication squares, the two weakened
//! unit diagrams, the agreement of the two paths of the combined weak-unit
//! diagram (whose common value is the idempotent λ̄), and the normalization
//! conditions saying λ absorbs the unit idempotents of the demimonads.

use crate::algebra::{Algebra, Demimonad};
use crate::field::FieldDesc;
use crate::linmap::{LinMap, Space};
use crate::report::CheckReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WdlError {
    #[error("λ must be t⊗s → s⊗t: expected {expected_dom}→{expected_cod}, got {dom}→{cod}")]
    ShapeMismatch {
        expected_dom: usize,
        expected_cod: usize,
        dom: usize,
        cod: usize,
    },
    #[error("the two weak-unit paths disagree; not a weak distributive law:\n{0}")]
    PathsDisagree(CheckReport),
    #[error("invalid weak distributive law:\n{0}")]
    InvalidLaw(CheckReport),
    #[error("invalid 1-cell between weak distributive laws:\n{0}")]
    InvalidOneCell(CheckReport),
    #[error("binary factorization precondition ({condition}) fails:\n{report}")]
    PreconditionFailure {
        condition: char,
        report: CheckReport,
    },
}

/// A weak distributive law between the monads `t` and `s`.
#[derive(Clone, Debug)]
pub struct WeakDistributiveLaw {
    t: Demimonad,
    s: Demimonad,
    lambda: LinMap,
}

impl WeakDistributiveLaw {
    pub fn new(t: Demimonad, s: Demimonad, lambda: LinMap) -> Result<Self, WdlError> {
        let expected_dom = t.dim() * s.dim();
        let expected_cod = s.dim() * t.dim();
        if lambda.domain().dim() != expected_dom || lambda.codomain().dim() != expected_cod {
            return Err(WdlError::ShapeMismatch {
                expected_dom,
                expected_cod,
                dom: lambda.domain().dim(),
                cod: lambda.codomain().dim(),
            });
        }
        Ok(WeakDistributiveLaw { t, s, lambda })
    }

    pub fn from_algebras(t: &Algebra, s: &Algebra, lambda: LinMap) -> Result<Self, WdlError> {
        WeakDistributiveLaw::new(
            Demimonad::from_algebra(t),
            Demimonad::from_algebra(s),
            lambda,
        )
    }

    /// The flip map as a (strict, hence weak) distributive law.
    pub fn flip_law(t: &Demimonad, s: &Demimonad) -> WeakDistributiveLaw {
        let lambda = LinMap::flip(t.space(), s.space(), t.field());
        WeakDistributiveLaw {
            t: t.clone(),
            s: s.clone(),
            lambda,
        }
    }

    pub fn t(&self) -> &Demimonad {
        &self.t
    }

    pub fn s(&self) -> &Demimonad {
        &self.s
    }

    pub fn lambda(&self) -> &LinMap {
        &self.lambda
    }

    pub fn field(&self) -> FieldDesc {
        self.lambda.field()
    }
}

/// Verifies all four law diagrams, the agreement of the two weak-unit paths,
/// and the demimonad normalization conditions.
pub fn check_wdl(w: &WeakDistributiveLaw) -> CheckReport {
    let mut report = CheckReport::new();
    let (t, s, lam) = (&w.t, &w.s, &w.lambda);
    let (id_t, id_s) = (t.identity(), s.identity());
    let (mu_t, eta_t) = (t.mul(), t.unit());
    let (mu_s, eta_s) = (s.mul(), s.unit());

    // t²s → st: compat with μ_t
    let lhs = id_t
        .tensor(lam)
        .then(&lam.tensor(&id_t))
        .then(&id_s.tensor(mu_t));
    let rhs = mu_t.tensor(&id_s).then(lam);
    report.push_eq("mul_t_compat", &lhs, &rhs);

    // ts² → st: compat with μ_s
    let lhs = lam
        .tensor(&id_s)
        .then(&id_s.tensor(lam))
        .then(&mu_s.tensor(&id_t));
    let rhs = id_t.tensor(mu_s).then(lam);
    report.push_eq("mul_s_compat", &lhs, &rhs);

    // weak unit diagram for η_t: s → st
    let lhs = eta_t.tensor(&id_s).then(lam);
    let rhs = id_s
        .tensor(eta_t)
        .then(&id_s.tensor(&id_t).tensor(eta_s))
        .then(&id_s.tensor(lam))
        .then(&mu_s.tensor(&id_t));
    report.push_eq("weak_unit_t", &lhs, &rhs);

    // weak unit diagram for η_s: t → st
    let lhs = id_t.tensor(eta_s).then(lam);
    let rhs = eta_s
        .tensor(&id_t)
        .then(&eta_t.tensor(&id_s).tensor(&id_t))
        .then(&lam.tensor(&id_t))
        .then(&id_s.tensor(mu_t));
    report.push_eq("weak_unit_s", &lhs, &rhs);

    let (left, right) = lambda_bar_paths(w);
    report.push_eq("weak_unit_paths_agree", &right, &left);

    // normalization against the demimonad idempotents (identities for
    // honest algebras)
    report.push_eq("absorbs_et_domain", &t.idem().tensor(&id_s).then(lam), lam);
    report.push_eq("absorbs_es_domain", &id_t.tensor(s.idem()).then(lam), lam);
    report.push_eq(
        "absorbs_et_codomain",
        &lam.then(&id_s.tensor(t.idem())),
        lam,
    );
    report.push_eq(
        "absorbs_es_codomain",
        &lam.then(&s.idem().tensor(&id_t)),
        lam,
    );
    report
}

/// Both composites of the combined weak-unit diagram, `(left, right)`:
/// the left path inserts η_s and multiplies with μ_s, the right path
/// inserts η_t and multiplies with μ_t. They agree exactly when λ is a
/// weak distributive law, and the common value is λ̄.
pub fn lambda_bar_paths(w: &WeakDistributiveLaw) -> (LinMap, LinMap) {
    let (t, s, lam) = (&w.t, &w.s, &w.lambda);
    let (id_t, id_s) = (t.identity(), s.identity());
    let left = id_s
        .tensor(&id_t)
        .tensor(s.unit())
        .then(&id_s.tensor(lam))
        .then(&s.mul().tensor(&id_t));
    let right = t
        .unit()
        .tensor(&id_s)
        .tensor(&id_t)
        .then(&lam.tensor(&id_t))
        .then(&id_s.tensor(t.mul()));
    (left, right)
}

/// The idempotent λ̄: s⊗t → s⊗t. Fails if the two defining paths disagree.
pub fn lambda_bar(w: &WeakDistributiveLaw) -> Result<LinMap, WdlError> {
    let (left, right) = lambda_bar_paths(w);
    if !left.same_map(&right) {
        let mut report = CheckReport::new();
        report.push_eq("weak_unit_paths_agree", &right, &left);
        return Err(WdlError::PathsDisagree(report));
    }
    Ok(right)
}

/// The derived identities a valid law satisfies: λ̄ absorbs λ, λ̄ commutes
/// with the doubled multiplication, the two one-sided absorption squares,
/// and the two unit/multiplication exchange squares.
pub fn derived_identities_report(w: &WeakDistributiveLaw) -> CheckReport {
    let mut report = CheckReport::new();
    let (t, s, lam) = (&w.t, &w.s, &w.lambda);
    let (id_t, id_s) = (t.identity(), s.identity());
    let Ok(bar) = lambda_bar(w) else {
        report.push_flag("lambda_bar_exists", false, None);
        return report;
    };

    report.push_eq("bar_absorbs_lambda", &lam.then(&bar), lam);

    let mumu = s.mul().tensor(t.mul());
    let lhs = id_s.tensor(&bar).tensor(&id_t).then(&mumu);
    let rhs = mumu.then(&bar);
    report.push_eq("bar_in_doubled_mul", &lhs, &rhs);

    // sts → st: λ̄⊗s may be pre-applied before s⊗λ, μ_s⊗t
    let base = id_s.tensor(lam).then(&s.mul().tensor(&id_t));
    let pre = bar.tensor(&id_s).then(&base);
    report.push_eq("bar_left_absorption", &pre, &base);

    // tst → st: t⊗λ̄ may be pre-applied before λ⊗t, s⊗μ_t
    let base = lam.tensor(&id_t).then(&id_s.tensor(t.mul()));
    let pre = id_t.tensor(&bar).then(&base);
    report.push_eq("bar_right_absorption", &pre, &base);

    // t² → st: inserting η_s commutes with μ_t
    let lhs = id_t
        .tensor(s.unit())
        .tensor(&id_t)
        .then(&lam.tensor(&id_t))
        .then(&id_s.tensor(t.mul()));
    let rhs = t.mul().then(&id_t.tensor(s.unit())).then(lam);
    report.push_eq("unit_exchange_t", &lhs, &rhs);

    // s² → st: symmetrically
    let lhs = id_s
        .tensor(t.unit())
        .tensor(&id_s)
        .then(&id_s.tensor(lam))
        .then(&s.mul().tensor(&id_t));
    let rhs = s.mul().then(&t.unit().tensor(&id_s)).then(lam);
    report.push_eq("unit_exchange_s", &lhs, &rhs);
    report
}

/// A 1-cell of the local idempotent closure: a space with an idempotent.
#[derive(Clone, Debug)]
pub struct Carrier {
    space: Space,
    idem: LinMap,
}

impl Carrier {
    pub fn new(space: Space, idem: LinMap) -> Carrier {
        assert_eq!(idem.domain().dim(), space.dim());
        assert_eq!(idem.codomain().dim(), space.dim());
        Carrier { space, idem }
    }

    /// The trivial carrier: the base field with identity idempotent.
    pub fn trivial(field: FieldDesc) -> Carrier {
        let space = Space::scalar();
        let idem = LinMap::identity(&space, field);
        Carrier { space, idem }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn idem(&self) -> &LinMap {
        &self.idem
    }

    pub fn tensor(&self, other: &Carrier) -> Carrier {
        Carrier {
            space: self.space.tensor(&other.space),
            idem: self.idem.tensor(&other.idem),
        }
    }
}

/// A 1-cell in the 2-category of monads, pointing from `source` to `target`:
/// a carrier `v` and a structure map ξ: target⊗v → v⊗source.
#[derive(Clone, Debug)]
pub struct MonadMorphism {
    source: Demimonad,
    target: Demimonad,
    carrier: Carrier,
    xi: LinMap,
}

impl MonadMorphism {
    pub fn new(source: Demimonad, target: Demimonad, carrier: Carrier, xi: LinMap) -> Self {
        MonadMorphism {
            source,
            target,
            carrier,
            xi,
        }
    }

    pub fn source(&self) -> &Demimonad {
        &self.source
    }

    pub fn target(&self) -> &Demimonad {
        &self.target
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn xi(&self) -> &LinMap {
        &self.xi
    }
}

/// Multiplicativity, the unit law and the idempotent normalizations of a
/// monad morphism.
pub fn check_monad_morphism(m: &MonadMorphism) -> CheckReport {
    let mut report = CheckReport::new();
    let field = m.xi.field();
    let id_v = LinMap::identity(&m.carrier.space, field);
    let id_src = m.source.identity();
    let id_tgt = m.target.identity();

    let lhs = m.target.mul().tensor(&id_v).then(&m.xi);
    let rhs = id_tgt
        .tensor(&m.xi)
        .then(&m.xi.tensor(&id_src))
        .then(&id_v.tensor(m.source.mul()));
    report.push_eq("multiplicative", &lhs, &rhs);

    let lhs = m.target.unit().tensor(&id_v).then(&m.xi);
    let rhs = m.carrier.idem.tensor(m.source.unit());
    report.push_eq("unital", &lhs, &rhs);

    let lhs = m.target.idem().tensor(&m.carrier.idem).then(&m.xi);
    report.push_eq("normalized_domain", &lhs, &m.xi);
    let lhs = m.xi.then(&m.carrier.idem.tensor(m.source.idem()));
    report.push_eq("normalized_codomain", &lhs, &m.xi);
    report
}

/// The weak wreath product demimonad on s⊗t, with its two canonical
/// projection 1-cells onto `t` and `s`.
pub fn weak_wreath(
    w: &WeakDistributiveLaw,
) -> Result<(Demimonad, MonadMorphism, MonadMorphism), WdlError> {
    let (t, s, lam) = (&w.t, &w.s, &w.lambda);
    let bar = lambda_bar(w)?;
    let space = s.space().tensor(t.space());
    let (id_t, id_s) = (t.identity(), s.identity());
    let mul = id_s
        .tensor(lam)
        .tensor(&id_t)
        .then(&s.mul().tensor(t.mul()))
        .with_domain(space.tensor(&space));
    let unit = t.unit().tensor(s.unit()).then(lam);
    let wreath = Demimonad::new(space, mul, unit, bar);

    let field = w.field();
    let alpha = id_t.tensor(s.unit()).then(lam);
    let proj_t = MonadMorphism::new(wreath.clone(), t.clone(), Carrier::trivial(field), alpha);
    let beta = t.unit().tensor(&id_s).then(lam);
    let proj_s = MonadMorphism::new(wreath.clone(), s.clone(), Carrier::trivial(field), beta);
    Ok((wreath, proj_t, proj_s))
}

/// A 1-cell between two weak distributive laws: one carrier with structure
/// maps for the t-pair and the s-pair.
#[derive(Clone, Debug)]
pub struct WdlOneCell {
    carrier: Carrier,
    xi_t: LinMap,
    xi_s: LinMap,
}

impl WdlOneCell {
    pub fn new(carrier: Carrier, xi_t: LinMap, xi_s: LinMap) -> WdlOneCell {
        WdlOneCell {
            carrier,
            xi_t,
            xi_s,
        }
    }

    /// The identity 1-cell on a law: trivial carrier, structure maps the
    /// unit idempotents of the two monads.
    pub fn identity(w: &WeakDistributiveLaw) -> WdlOneCell {
        WdlOneCell {
            carrier: Carrier::trivial(w.field()),
            xi_t: w.t.idem().clone(),
            xi_s: w.s.idem().clone(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn xi_t(&self) -> &LinMap {
        &self.xi_t
    }

    pub fn xi_s(&self) -> &LinMap {
        &self.xi_s
    }

    pub fn set_xi_t(&mut self, xi: LinMap) {
        self.xi_t = xi;
    }

    /// Composite 1-cell `self ∘ inner` (inner applied first): the carrier is
    /// self.v ⊗ inner.v and the structure maps thread through both.
    pub fn compose(&self, inner: &WdlOneCell) -> WdlOneCell {
        let field = self.xi_t.field();
        let id_outer = LinMap::identity(&self.carrier.space, field);
        let id_inner = LinMap::identity(&inner.carrier.space, field);
        let xi_t = self
            .xi_t
            .tensor(&id_inner)
            .then(&id_outer.tensor(&inner.xi_t));
        let xi_s = self
            .xi_s
            .tensor(&id_inner)
            .then(&id_outer.tensor(&inner.xi_s));
        WdlOneCell {
            carrier: self.carrier.tensor(&inner.carrier),
            xi_t,
            xi_s,
        }
    }
}

/// Verifies that `(v, ξ_t, ξ_s)` is a 1-cell from `w` to `w2`: both monad
/// morphism law sets plus the compatibility heptagon with λ̄-normalization.
pub fn check_wdl_one_cell(
    c: &WdlOneCell,
    w: &WeakDistributiveLaw,
    w2: &WeakDistributiveLaw,
) -> CheckReport {
    let mut report = CheckReport::new();
    report.absorb(
        "xi_t",
        check_monad_morphism(&MonadMorphism::new(
            w.t.clone(),
            w2.t.clone(),
            c.carrier.clone(),
            c.xi_t.clone(),
        )),
    );
    report.absorb(
        "xi_s",
        check_monad_morphism(&MonadMorphism::new(
            w.s.clone(),
            w2.s.clone(),
            c.carrier.clone(),
            c.xi_s.clone(),
        )),
    );
    let field = c.xi_t.field();
    let id_v = LinMap::identity(&c.carrier.space, field);
    let id_s2 = w2.s.identity();
    let (id_t, id_s) = (w.t.identity(), w.s.identity());
    let id_t2 = w2.t.identity();
    match lambda_bar(w) {
        Ok(bar) => {
            let lhs = id_t2
                .tensor(&c.xi_s)
                .then(&c.xi_t.tensor(&id_s))
                .then(&id_v.tensor(w.lambda()));
            let rhs = w2
                .lambda()
                .tensor(&id_v)
                .then(&id_s2.tensor(&c.xi_t))
                .then(&c.xi_s.tensor(&id_t))
                .then(&id_v.tensor(&bar));
            report.push_eq("laws_compatible", &lhs, &rhs);
        }
        Err(_) => report.push_flag("laws_compatible", false, Some("λ̄ undefined".into())),
    }
    report
}

/// Sends a 1-cell of laws to the induced monad morphism between the two
/// weak wreath products: structure map (v⊗λ̄)∘(ξ_s⊗t)∘(s′⊗ξ_t).
pub fn wreath_one_cell(
    c: &WdlOneCell,
    w: &WeakDistributiveLaw,
    w2: &WeakDistributiveLaw,
) -> Result<MonadMorphism, WdlError> {
    let report = check_wdl_one_cell(c, w, w2);
    if !report.passed() {
        return Err(WdlError::InvalidOneCell(report));
    }
    let (wreath, _, _) = weak_wreath(w)?;
    let (wreath2, _, _) = weak_wreath(w2)?;
    let bar = lambda_bar(w)?;
    let field = c.xi_t.field();
    let id_v = LinMap::identity(&c.carrier.space, field);
    let id_s2 = w2.s.identity();
    let id_t = w.t.identity();
    let xi = id_s2
        .tensor(&c.xi_t)
        .then(&c.xi_s.tensor(&id_t))
        .then(&id_v.tensor(&bar));
    Ok(MonadMorphism::new(wreath, wreath2, c.carrier.clone(), xi))
}

/// Reconstructs a weak distributive law from a binary factorization of the
/// demimonad `r` through `t` and `s`: λ = ι∘μ_r∘(α⊗β).
///
/// `alpha: T → R` and `beta: S → R` are the structure maps of trivial-carrier
/// monad morphisms (A,r) → (A,t) and (A,r) → (A,s); `iota: R → S⊗T` must be
/// an s-t bimodule section of π = μ_r∘(β⊗α).
pub fn binary_factorize(
    t: &Demimonad,
    s: &Demimonad,
    r: &Demimonad,
    alpha: &LinMap,
    beta: &LinMap,
    iota: &LinMap,
) -> Result<WeakDistributiveLaw, WdlError> {
    let field = r.field();
    // (a): trivial-carrier monad morphism laws for α and β
    let mut report_a = CheckReport::new();
    report_a.absorb(
        "alpha",
        check_monad_morphism(&MonadMorphism::new(
            r.clone(),
            t.clone(),
            Carrier::trivial(field),
            alpha.clone(),
        )),
    );
    report_a.absorb(
        "beta",
        check_monad_morphism(&MonadMorphism::new(
            r.clone(),
            s.clone(),
            Carrier::trivial(field),
            beta.clone(),
        )),
    );
    if !report_a.passed() {
        return Err(WdlError::PreconditionFailure {
            condition: 'a',
            report: report_a,
        });
    }

    // (b): π∘ι = ē_r and ι is an s-t bimodule map
    let mut report_b = CheckReport::new();
    let id_r = r.identity();
    let (id_t, id_s) = (t.identity(), s.identity());
    let pi = beta.tensor(alpha).then(r.mul());
    report_b.push_eq("section_of_pi", &iota.then(&pi), r.idem());
    let left_action = beta.tensor(&id_r).then(r.mul());
    let lhs = left_action.then(iota);
    let rhs = id_s.tensor(iota).then(&s.mul().tensor(&id_t));
    report_b.push_eq("left_module_map", &lhs, &rhs);
    let right_action = id_r.tensor(alpha).then(r.mul());
    let lhs = right_action.then(iota);
    let rhs = iota.tensor(&id_t).then(&id_s.tensor(t.mul()));
    report_b.push_eq("right_module_map", &lhs, &rhs);
    if !report_b.passed() {
        return Err(WdlError::PreconditionFailure {
            condition: 'b',
            report: report_b,
        });
    }

    let lambda = alpha.tensor(beta).then(r.mul()).then(iota);
    let law = WeakDistributiveLaw::new(t.clone(), s.clone(), lambda)?;

    // the recovered law must be valid, its idempotent must be ι∘π, and
    // (π, ι) must exchange the wreath structure with r's
    let mut post = check_wdl(&law);
    // flagged, not failed: an honest monad r whose splitting is properly
    // weak means the caller mixed strict and weak data
    let r_honest = r.idem().same_map(&id_r);
    let split_strict = pi
        .then(iota)
        .same_map(&LinMap::identity(&s.space().tensor(t.space()), field));
    if r_honest && !split_strict {
        post.push_flag(
            "strict_monad_weak_splitting",
            true,
            Some("r is an honest monad but ι∘π is a proper idempotent".into()),
        );
    }
    let bar = lambda_bar(&law)?;
    post.push_eq("idempotent_is_iota_pi", &bar, &pi.then(iota));
    let (wreath, _, _) = weak_wreath(&law)?;
    post.push_eq(
        "pi_multiplicative",
        &wreath.mul().then(&pi),
        &pi.tensor(&pi).then(r.mul()),
    );
    post.push_eq("pi_unital", &wreath.unit().then(&pi), r.unit());
    post.push_eq(
        "iota_multiplicative",
        &r.mul().then(iota),
        &iota.tensor(iota).then(wreath.mul()),
    );
    post.push_eq("iota_unital", &r.unit().then(iota), wreath.unit());
    if !post.passed() {
        return Err(WdlError::InvalidLaw(post));
    }
    Ok(law)
}
