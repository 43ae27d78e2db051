//! Algebras, coalgebras and demimonads given by structure constants.
//!
//! A demimonad is an algebra-like object whose unit laws hold only up to the
//! idempotent `ē = μ∘(η⊗id) = μ∘(id⊗η)`; honest algebras are exactly the
//! demimonads with `ē = id`.

use crate::field::FieldDesc;
use crate::linmap::{LinMap, Space};
use crate::report::CheckReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("demimonad axioms fail:\n{0}")]
    DemimonadAxiomFailure(CheckReport),
    #[error("structure map has wrong shape: {0}")]
    BadShape(String),
}

/// A unital associative algebra: μ: A⊗A → A, η: F → A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    space: Space,
    mul: LinMap,
    unit: LinMap,
}

impl Algebra {
    pub fn new(space: Space, mul: LinMap, unit: LinMap) -> Result<Algebra, AlgebraError> {
        let d = space.dim();
        if mul.domain().dim() != d * d || mul.codomain().dim() != d {
            return Err(AlgebraError::BadShape(format!(
                "mul must be A⊗A → A for dim {d}, got {}→{}",
                mul.domain().dim(),
                mul.codomain().dim()
            )));
        }
        if unit.domain().dim() != 1 || unit.codomain().dim() != d {
            return Err(AlgebraError::BadShape(format!(
                "unit must be F → A for dim {d}, got {}→{}",
                unit.domain().dim(),
                unit.codomain().dim()
            )));
        }
        Ok(Algebra { space, mul, unit })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn mul(&self) -> &LinMap {
        &self.mul
    }

    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    pub fn field(&self) -> FieldDesc {
        self.mul.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// A coassociative counital coalgebra: Δ: C → C⊗C, ε: C → F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    space: Space,
    comul: LinMap,
    counit: LinMap,
}

impl Coalgebra {
    pub fn new(space: Space, comul: LinMap, counit: LinMap) -> Result<Coalgebra, AlgebraError> {
        let d = space.dim();
        if comul.domain().dim() != d || comul.codomain().dim() != d * d {
            return Err(AlgebraError::BadShape(format!(
                "comul must be C → C⊗C for dim {d}"
            )));
        }
        if counit.domain().dim() != d || counit.codomain().dim() != 1 {
            return Err(AlgebraError::BadShape(format!(
                "counit must be C → F for dim {d}"
            )));
        }
        Ok(Coalgebra {
            space,
            comul,
            counit,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn comul(&self) -> &LinMap {
        &self.comul
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    pub fn field(&self) -> FieldDesc {
        self.comul.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// A monad in the local idempotent closure: μ, η plus the cached idempotent ē.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demimonad {
    space: Space,
    mul: LinMap,
    unit: LinMap,
    idem: LinMap,
}

impl Demimonad {
    pub fn new(space: Space, mul: LinMap, unit: LinMap, idem: LinMap) -> Demimonad {
        debug_assert_eq!(mul.codomain().dim(), space.dim());
        debug_assert_eq!(idem.domain().dim(), space.dim());
        Demimonad {
            space,
            mul,
            unit,
            idem,
        }
    }

    /// An honest algebra viewed as a demimonad; ē comes out as the identity.
    pub fn from_algebra(a: &Algebra) -> Demimonad {
        let id = LinMap::identity(a.space(), a.field());
        let idem = a
            .mul()
            .compose(&a.unit().tensor(&id))
            .expect("unit insertion");
        Demimonad {
            space: a.space().clone(),
            mul: a.mul().clone(),
            unit: a.unit().clone(),
            idem,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn mul(&self) -> &LinMap {
        &self.mul
    }

    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    /// The induced idempotent ē = μ∘(η⊗id).
    pub fn idem(&self) -> &LinMap {
        &self.idem
    }

    pub fn field(&self) -> FieldDesc {
        self.mul.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn identity(&self) -> LinMap {
        LinMap::identity(&self.space, self.field())
    }

    /// The trivial demimonad on the base field.
    pub fn trivial(field: FieldDesc) -> Demimonad {
        let f = Space::scalar();
        let id = LinMap::identity(&f, field);
        // F⊗F → F is the identity matrix under the flat indexing
        let mul = id.clone().with_domain(f.tensor(&f));
        Demimonad {
            space: f,
            mul,
            unit: id.clone(),
            idem: id,
        }
    }
}

/// Verifies associativity and both unit laws.
pub fn check_algebra(a: &Algebra) -> CheckReport {
    let mut report = CheckReport::new();
    let field = a.field();
    let id = LinMap::identity(a.space(), field);
    let mul = a.mul();
    let assoc_l = mul.tensor(&id).then(mul);
    let assoc_r = id.tensor(mul).then(mul);
    report.push_eq("associativity", &assoc_l, &assoc_r);
    let unit_l = a.unit().tensor(&id).then(mul);
    let unit_r = id.tensor(a.unit()).then(mul);
    report.push_eq("left_unit", &unit_l, &id);
    report.push_eq("right_unit", &unit_r, &id);
    report
}

/// Verifies coassociativity and both counit laws.
pub fn check_coalgebra(c: &Coalgebra) -> CheckReport {
    let mut report = CheckReport::new();
    let field = c.field();
    let id = LinMap::identity(c.space(), field);
    let comul = c.comul();
    let coassoc_l = comul.then(&comul.tensor(&id));
    let coassoc_r = comul.then(&id.tensor(comul));
    report.push_eq("coassociativity", &coassoc_l, &coassoc_r);
    let counit_l = comul.then(&c.counit().tensor(&id));
    let counit_r = comul.then(&id.tensor(c.counit()));
    report.push_eq("left_counit", &counit_l, &id);
    report.push_eq("right_counit", &counit_r, &id);
    report
}

/// Verifies the four demimonad diagrams plus idempotency of ē.
///
/// The diagrams: associativity of μ; the η-square (μ∘(η⊗id) = μ∘(id⊗η),
/// whose common value must be the cached ē); μ∘(η⊗η) = η; and
/// μ∘(μ⊗id)∘(η⊗id⊗id) = μ.
pub fn check_demimonad(d: &Demimonad) -> CheckReport {
    let mut report = CheckReport::new();
    let id = d.identity();
    let mul = d.mul();
    let unit = d.unit();

    let assoc_l = mul.tensor(&id).then(mul);
    let assoc_r = id.tensor(mul).then(mul);
    report.push_eq("associativity", &assoc_l, &assoc_r);

    let eta_left = unit.tensor(&id).then(mul);
    let eta_right = id.tensor(unit).then(mul);
    report.push_eq("eta_square", &eta_left, &eta_right);
    report.push_eq("idem_matches_eta_square", &eta_left, d.idem());

    let unit_unit = unit.tensor(unit).then(mul);
    report.push_eq("unit_product", &unit_unit, unit);

    let absorb = unit
        .tensor(&id)
        .tensor(&id)
        .then(&mul.tensor(&id))
        .then(mul);
    report.push_eq("unit_absorption", &absorb, mul);

    let ee = d.idem().then(d.idem());
    report.push_eq("idempotency", &ee, d.idem());
    report
}

/// Splits ē and transports the demimonad structure onto its image, yielding
/// an honest algebra together with the section ι and retraction π.
pub fn split_demimonad(d: &Demimonad) -> Result<(Algebra, LinMap, LinMap), AlgebraError> {
    let report = check_demimonad(d);
    if !report.passed() {
        return Err(AlgebraError::DemimonadAxiomFailure(report));
    }
    let (iota_m, pi_m) = d
        .idem()
        .matrix()
        .split_idempotent()
        .map_err(|e| AlgebraError::BadShape(e.to_string()))?;
    let image = Space::line(iota_m.cols());
    let iota = LinMap::new(image.clone(), d.space().clone(), iota_m).expect("split shapes");
    let pi = LinMap::new(d.space().clone(), image.clone(), pi_m).expect("split shapes");
    let mul = iota.tensor(&iota).then(d.mul()).then(&pi);
    let unit = d.unit().then(&pi);
    let alg = Algebra::new(image, mul, unit)?;
    Ok((alg, iota, pi))
}
