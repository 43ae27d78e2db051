//! Weak bialgebras, their duals and the canonical maps of a dual pair.
//!
//! The dual Ĥ always uses the basis dual to H's, so the evaluation map is the
//! reshaped identity matrix and all four dual structure maps are literal
//! matrix transposes. That convention removes every sign and ordering
//! ambiguity from the file formats and golden values.

use crate::algebra::{check_algebra, check_coalgebra, Algebra, AlgebraError, Coalgebra};
use crate::field::{FieldDesc, Scalar};
use crate::linmap::{LinMap, Space};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BialgebraError {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("weak bialgebra axioms fail:\n{0}")]
    AxiomFailure(CheckReport),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An algebra and a coalgebra on one space, subject to the weak
/// compatibility axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakBialgebra {
    space: Space,
    algebra: Algebra,
    coalgebra: Coalgebra,
}

impl WeakBialgebra {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra) -> WeakBialgebra {
        assert_eq!(algebra.space().dim(), coalgebra.space().dim());
        WeakBialgebra {
            space: algebra.space().clone(),
            algebra,
            coalgebra,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn mul(&self) -> &LinMap {
        self.algebra.mul()
    }

    pub fn unit(&self) -> &LinMap {
        self.algebra.unit()
    }

    pub fn comul(&self) -> &LinMap {
        self.coalgebra.comul()
    }

    pub fn counit(&self) -> &LinMap {
        self.coalgebra.counit()
    }

    pub fn field(&self) -> FieldDesc {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn id(&self) -> LinMap {
        LinMap::identity(&self.space, self.field())
    }
}

/// The evaluation pairing of a dual pair, ev: Ĥ⊗H → F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    ev: LinMap,
}

impl Pairing {
    pub fn ev(&self) -> &LinMap {
        &self.ev
    }

    /// Nondegeneracy: the dim×dim reshape of ev has full rank.
    pub fn is_nondegenerate(&self, dim: usize) -> bool {
        let m = self.ev.matrix();
        let mut triplets = Vec::new();
        for (c, v) in m.row(0) {
            triplets.push((c / dim, c % dim, v.clone()));
        }
        Matrix::from_triplets(dim, dim, m.field(), triplets)
            .map(|sq| sq.rank() == dim)
            .unwrap_or(false)
    }
}

/// A weak bialgebra together with its dual and the evaluation map.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub h: WeakBialgebra,
    pub hat: WeakBialgebra,
    pub ev: Pairing,
}

/// Outcome of [`check_weak_bialgebra`]: axiom report plus the two
/// strictness diagnostics.
#[derive(Clone, Debug)]
pub struct WeakBialgebraReport {
    pub report: CheckReport,
    /// Δ∘η = η⊗η
    pub strict_unit: bool,
    /// ε∘μ = ε⊗ε
    pub strict_counit: bool,
}

impl WeakBialgebraReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn strict(&self) -> bool {
        self.strict_unit && self.strict_counit
    }
}

/// Verifies the algebra and coalgebra parts and the three weak-bialgebra
/// axiom blocks; reports the strictness flags as diagnostics.
pub fn check_weak_bialgebra(h: &WeakBialgebra) -> WeakBialgebraReport {
    let mut report = CheckReport::new();
    report.absorb("algebra", check_algebra(h.algebra()));
    report.absorb("coalgebra", check_coalgebra(h.coalgebra()));

    let id = h.id();
    let flip = LinMap::flip(&h.space, &h.space, h.field());
    let (mul, unit, comul, counit) = (h.mul(), h.unit(), h.comul(), h.counit());

    // Δ∘μ = (μ⊗μ)∘(H⊗σ⊗H)∘(Δ⊗Δ)
    let lhs = mul.then(comul);
    let rhs = comul
        .tensor(comul)
        .then(&id.tensor(&flip).tensor(&id))
        .then(&mul.tensor(mul));
    report.push_eq("multiplicativity", &lhs, &rhs);

    // weak unit block: both composites agree with Δ²∘η
    let delta2_eta = unit.then(comul).then(&comul.tensor(&id));
    let wu_plain = unit
        .tensor(unit)
        .then(&comul.tensor(comul))
        .then(&id.tensor(mul).tensor(&id));
    report.push_eq("weak_unit_straight", &wu_plain, &delta2_eta);
    let wu_flipped = unit
        .tensor(unit)
        .then(&comul.tensor(comul))
        .then(&id.tensor(&flip).tensor(&id))
        .then(&id.tensor(mul).tensor(&id));
    report.push_eq("weak_unit_flipped", &wu_flipped, &delta2_eta);

    // weak counit block: both composites agree with ε∘μ²
    let eps_mul2 = mul.tensor(&id).then(mul).then(counit);
    let wc_plain = id
        .tensor(comul)
        .tensor(&id)
        .then(&mul.tensor(mul))
        .then(&counit.tensor(counit));
    report.push_eq("weak_counit_straight", &wc_plain, &eps_mul2);
    let wc_flipped = id
        .tensor(comul)
        .tensor(&id)
        .then(&id.tensor(&flip).tensor(&id))
        .then(&mul.tensor(mul))
        .then(&counit.tensor(counit));
    report.push_eq("weak_counit_flipped", &wc_flipped, &eps_mul2);

    let strict_unit = unit.then(comul).same_map(&unit.tensor(unit));
    let strict_counit = mul.then(counit).same_map(&counit.tensor(counit));
    WeakBialgebraReport {
        report,
        strict_unit,
        strict_counit,
    }
}

/// Builds the dual weak bialgebra and the evaluation pairing.
///
/// In the dual-basis convention the four structure maps of Ĥ are the
/// transposes μ̂ = Δᵀ, η̂ = εᵀ, Δ̂ = μᵀ, ε̂ = ηᵀ.
pub fn dual(h: &WeakBialgebra) -> Result<DualPair, BialgebraError> {
    let field = h.field();
    let hat_space = h.space().clone();
    let d = h.dim();
    let mul_hat = LinMap::new(
        hat_space.tensor(&hat_space),
        hat_space.clone(),
        h.comul().matrix().transpose(),
    )
    .expect("transpose shapes");
    let unit_hat = LinMap::new(
        Space::scalar(),
        hat_space.clone(),
        h.counit().matrix().transpose(),
    )
    .expect("transpose shapes");
    let comul_hat = LinMap::new(
        hat_space.clone(),
        hat_space.tensor(&hat_space),
        h.mul().matrix().transpose(),
    )
    .expect("transpose shapes");
    let counit_hat = LinMap::new(
        hat_space.clone(),
        Space::scalar(),
        h.unit().matrix().transpose(),
    )
    .expect("transpose shapes");
    let hat = WeakBialgebra::new(
        Algebra::new(hat_space.clone(), mul_hat, unit_hat)?,
        Coalgebra::new(hat_space.clone(), comul_hat, counit_hat)?,
    );
    let hat_report = check_weak_bialgebra(&hat);
    if !hat_report.passed() {
        return Err(BialgebraError::AxiomFailure(hat_report.report));
    }
    let ev_triplets = (0..d).map(|i| (0, i * d + i, Scalar::one(field)));
    let ev = LinMap::new(
        hat_space.tensor(h.space()),
        Space::scalar(),
        Matrix::from_triplets(1, d * d, field, ev_triplets).expect("ev triplets"),
    )
    .expect("ev shapes");
    Ok(DualPair {
        h: h.clone(),
        hat,
        ev: Pairing { ev },
    })
}

/// The idempotent ε̄ₛ = (H⊗ε)∘(H⊗μ)∘(Δ⊗H)∘(η⊗H).
pub fn eps_bar_s(h: &WeakBialgebra) -> LinMap {
    let id = h.id();
    h.unit()
        .tensor(&id)
        .then(&h.comul().tensor(&id))
        .then(&id.tensor(h.mul()))
        .then(&id.tensor(h.counit()))
}

/// Checks idempotency of ε̄ₛ and the two compatibility squares it satisfies
/// (a¹ε(a²b) = a·ε̄ₛ(b) and 1¹⊗1²a = ε̄ₛ(a¹)⊗a²).
pub fn eps_bar_s_report(h: &WeakBialgebra) -> CheckReport {
    let mut report = CheckReport::new();
    let e = eps_bar_s(h);
    let id = h.id();
    report.push_eq("idempotency", &e.then(&e), &e);
    let lhs1 = h
        .comul()
        .tensor(&id)
        .then(&id.tensor(h.mul()))
        .then(&id.tensor(h.counit()));
    let rhs1 = id.tensor(&e).then(h.mul());
    report.push_eq("absorbs_into_product", &lhs1, &rhs1);
    let lhs2 = h
        .unit()
        .tensor(&id)
        .then(&h.comul().tensor(&id))
        .then(&id.tensor(h.mul()));
    let rhs2 = h.comul().then(&e.tensor(&id));
    report.push_eq("coproduct_truncation", &lhs2, &rhs2);
    report
}

/// ξ = (Ĥ⊗ev)∘(Δ̂⊗H): Ĥ⊗H → Ĥ.
pub fn left_action_xi(pair: &DualPair) -> LinMap {
    let id_hat = pair.hat.id();
    pair.hat
        .comul()
        .tensor(&pair.h.id())
        .then(&id_hat.tensor(pair.ev.ev()))
}

/// ζ = (ev⊗H)∘(Ĥ⊗Δ): Ĥ⊗H → H.
pub fn right_action_zeta(pair: &DualPair) -> LinMap {
    let id_h = pair.h.id();
    pair.hat
        .id()
        .tensor(pair.h.comul())
        .then(&pair.ev.ev().tensor(&id_h))
}

/// Associativity squares and unit laws of the two canonical actions.
pub fn action_report(pair: &DualPair) -> CheckReport {
    let mut report = CheckReport::new();
    let xi = left_action_xi(pair);
    let zeta = right_action_zeta(pair);
    let id_h = pair.h.id();
    let id_hat = pair.hat.id();
    let flip_hh = LinMap::flip(pair.h.space(), pair.h.space(), pair.h.field());
    let flip_hathat = LinMap::flip(pair.hat.space(), pair.hat.space(), pair.h.field());

    // ξ∘(ξ⊗H) = ξ∘(Ĥ⊗μ)∘(Ĥ⊗σ)
    let lhs = xi.tensor(&id_h).then(&xi);
    let rhs = id_hat
        .tensor(&flip_hh)
        .then(&id_hat.tensor(pair.h.mul()))
        .then(&xi);
    report.push_eq("xi_associative", &lhs, &rhs);
    // ξ∘(Ĥ⊗η) = id
    let unit_law = id_hat.tensor(pair.h.unit()).then(&xi);
    report.push_eq("xi_unital", &unit_law, &id_hat);

    // ζ∘(Ĥ⊗ζ) = ζ∘(μ̂⊗H)∘(σ⊗H)
    let lhs = id_hat.tensor(&zeta).then(&zeta);
    let rhs = flip_hathat
        .tensor(&id_h)
        .then(&pair.hat.mul().tensor(&id_h))
        .then(&zeta);
    report.push_eq("zeta_associative", &lhs, &rhs);
    // ζ∘(η̂⊗H) = id
    let unit_law = pair.hat.unit().tensor(&id_h).then(&zeta);
    report.push_eq("zeta_unital", &unit_law, &id_h);
    report
}

/// Both evaluation triangles: ev∘(Ĥ⊗η) = ε̂ and ev∘(η̂⊗H) = ε.
pub fn pairing_report(pair: &DualPair) -> CheckReport {
    let mut report = CheckReport::new();
    let lhs = pair.hat.id().tensor(pair.h.unit()).then(pair.ev.ev());
    report.push_eq("ev_unit_triangle", &lhs, pair.hat.counit());
    let rhs = pair.hat.unit().tensor(&pair.h.id()).then(pair.ev.ev());
    report.push_eq("ev_counit_triangle", &rhs, pair.h.counit());
    report.push_flag(
        "nondegenerate",
        pair.ev.is_nondegenerate(pair.h.dim()),
        None,
    );
    report
}

/// λ = (Ĥ⊗ev⊗H)∘(Δ̂⊗Δ)∘σ: H⊗Ĥ → Ĥ⊗H.
pub fn canonical_lambda(pair: &DualPair) -> LinMap {
    let flip = LinMap::flip(pair.h.space(), pair.hat.space(), pair.h.field());
    flip.then(&pair.hat.comul().tensor(pair.h.comul()))
        .then(&pair.hat.id().tensor(pair.ev.ev()).tensor(&pair.h.id()))
}

/// λ̂ = (H⊗ev⊗Ĥ)∘(H⊗σ⊗Ĥ)∘(Δ⊗Δ̂)∘σ: Ĥ⊗H → H⊗Ĥ.
pub fn canonical_lambda_hat(pair: &DualPair) -> LinMap {
    let flip = LinMap::flip(pair.hat.space(), pair.h.space(), pair.h.field());
    let mid_flip = LinMap::flip(pair.h.space(), pair.hat.space(), pair.h.field());
    flip.then(&pair.h.comul().tensor(pair.hat.comul()))
        .then(&pair.h.id().tensor(&mid_flip).tensor(&pair.hat.id()))
        .then(&pair.h.id().tensor(pair.ev.ev()).tensor(&pair.hat.id()))
}

fn basis_unit(space: &Space, field: FieldDesc, k: usize) -> LinMap {
    LinMap::new(
        Space::scalar(),
        space.clone(),
        Matrix::from_triplets(space.dim(), 1, field, [(k, 0, Scalar::one(field))])
            .expect("basis vector"),
    )
    .expect("unit shape")
}

/// Group algebra F[G] from a multiplication table: Δg = g⊗g, ε ≡ 1.
pub fn group_algebra(
    table: &[Vec<usize>],
    field: FieldDesc,
) -> Result<WeakBialgebra, BialgebraError> {
    let n = table.len();
    let bad = |msg: &str| BialgebraError::NotAGroup(msg.to_string());
    if n == 0 {
        return Err(bad("empty table"));
    }
    for row in table {
        if row.len() != n || row.iter().any(|&v| v >= n) {
            return Err(bad("table is not square with entries < n"));
        }
    }
    // Latin square
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            seen_row[table[i][j]] = true;
            seen_col[table[j][i]] = true;
        }
        if seen_row.contains(&false) || seen_col.contains(&false) {
            return Err(bad("table is not a Latin square"));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
        .ok_or_else(|| bad("no identity element"))?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(bad("multiplication is not associative"));
                }
            }
        }
    }

    let space = Space::line(n);
    let mul_triplets = (0..n).flat_map(|i| {
        let row = table[i].clone();
        (0..n).map(move |j| (row[j], i * n + j, Scalar::one(field)))
    });
    let mul = LinMap::new(
        space.tensor(&space),
        space.clone(),
        Matrix::from_triplets(n, n * n, field, mul_triplets).expect("mul triplets"),
    )
    .expect("mul shape");
    let unit = basis_unit(&space, field, identity);
    let comul_triplets = (0..n).map(|g| (g * n + g, g, Scalar::one(field)));
    let comul = LinMap::new(
        space.clone(),
        space.tensor(&space),
        Matrix::from_triplets(n * n, n, field, comul_triplets).expect("comul triplets"),
    )
    .expect("comul shape");
    let counit_triplets = (0..n).map(|g| (0, g, Scalar::one(field)));
    let counit = LinMap::new(
        space.clone(),
        Space::scalar(),
        Matrix::from_triplets(1, n, field, counit_triplets).expect("counit triplets"),
    )
    .expect("counit shape");
    Ok(WeakBialgebra::new(
        Algebra::new(space.clone(), mul, unit)?,
        Coalgebra::new(space, comul, counit)?,
    ))
}

/// The k×k pair-groupoid algebra: matrix units with Δ(e_ij) = e_ij⊗e_ij and
/// ε(e_ij) = 1 — the minimal genuinely weak example for k ≥ 2.
pub fn pair_groupoid_algebra(k: usize, field: FieldDesc) -> WeakBialgebra {
    assert!(k >= 1);
    let n = k * k;
    let space = Space::line(n);
    let mut mul_triplets = Vec::new();
    // e_{ij}·e_{jl} = e_{il}
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let left = i * k + j;
                let right = j * k + l;
                let out = i * k + l;
                mul_triplets.push((out, left * n + right, Scalar::one(field)));
            }
        }
    }
    let mul = LinMap::new(
        space.tensor(&space),
        space.clone(),
        Matrix::from_triplets(n, n * n, field, mul_triplets).expect("mul triplets"),
    )
    .expect("mul shape");
    let unit_triplets = (0..k).map(|i| (i * k + i, 0, Scalar::one(field)));
    let unit = LinMap::new(
        Space::scalar(),
        space.clone(),
        Matrix::from_triplets(n, 1, field, unit_triplets).expect("unit triplets"),
    )
    .expect("unit shape");
    let comul_triplets = (0..n).map(|g| (g * n + g, g, Scalar::one(field)));
    let comul = LinMap::new(
        space.clone(),
        space.tensor(&space),
        Matrix::from_triplets(n * n, n, field, comul_triplets).expect("comul triplets"),
    )
    .expect("comul shape");
    let counit_triplets = (0..n).map(|g| (0, g, Scalar::one(field)));
    let counit = LinMap::new(
        space.clone(),
        Space::scalar(),
        Matrix::from_triplets(1, n, field, counit_triplets).expect("counit triplets"),
    )
    .expect("counit shape");
    WeakBialgebra::new(
        Algebra::new(space.clone(), mul, unit).expect("groupoid algebra"),
        Coalgebra::new(space, comul, counit).expect("groupoid coalgebra"),
    )
}

/// Multiplication table of Z/n.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect()
}

/// Multiplication table of S₃ (permutations of three points, composition
/// p∘q = "apply q, then p"), listed in lexicographic one-line order.
pub fn symmetric3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let (p, q) = (perms[i], perms[j]);
                    index_of([p[q[0]], p[q[1]], p[q[2]]])
                })
                .collect()
        })
        .collect()
}
