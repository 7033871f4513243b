//! The runnable identity suites: every structure theorem and closed-form
//! identity the engine implements, checked exactly and deterministically.
//!
//! Suites are field-generic; the default run is fully symbolic over
//! Q(q, alpha) and the same code runs over the evaluated field. All
//! randomness is seeded, so two runs produce identical reports.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::field::CoeffField;
use crate::linalg;
use crate::pbw::{AlgebraElement, Engine, Gen, Strategy, Word, GENERATORS};
use crate::structure::{
    casimir_eigen_check, center_elements, composition_report, criticality, decompose_over, solve_whittaker_vectors, solve_whittaker_vectors_direct, submodule_membership,
    CompositionKind, SolveMethod,
};
use crate::whittaker::{
    CoeffPoly, DegreeIndex, IdealSpec, ModuleElement, WhittakerModule,
};

const SEED: u64 = 0x0051_3753;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: true,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.push_detail(name, passed, None)
    }

    fn push_detail(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            detail,
        });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Pbw,
    Actions,
    UFamily,
    F1C1,
    GPower,
    Solver,
    Center,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::Pbw,
        SuiteName::Actions,
        SuiteName::UFamily,
        SuiteName::F1C1,
        SuiteName::GPower,
        SuiteName::Solver,
        SuiteName::Center,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Pbw => "pbw",
            SuiteName::Actions => "actions",
            SuiteName::UFamily => "u-family",
            SuiteName::F1C1 => "f1-c1",
            SuiteName::GPower => "g-power",
            SuiteName::Solver => "solver",
            SuiteName::Center => "center",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteName> {
        Self::ALL.iter().copied().find(|n| n.as_str() == s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Scan bound for criticality root searches.
    pub scan_bound: u32,
    /// Pin the reference panel expectations (dimensions and composition
    /// kinds). These hold over Q(q, alpha); an evaluated run may merge or
    /// split critical roots, so it checks internal consistency instead.
    pub pin_reference_expectations: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            scan_bound: 50,
            pin_reference_expectations: true,
        }
    }
}

/// One parameter pair (kappa, c) of the reference panel.
pub struct PanelPoint<C: CoeffField> {
    pub name: &'static str,
    pub kappa: C,
    pub c: C,
    /// Roots of h_n over the symbolic field.
    pub symbolic_roots: &'static [u32],
}

/// The reference panel: two non-critical pairs, two two-root critical pairs,
/// one one-root critical pair with a transcendental-free kappa, and one
/// one-root pair with symbolic kappa = q.
pub fn reference_panel<C: CoeffField>(ctx: &C::Ctx) -> Vec<PanelPoint<C>> {
    let q = |k: i64| C::q_pow(ctx, k);
    let int = |n: i64| C::from_int(ctx, n);
    let d = q(1).sub(&q(-1));
    let d2_inv = d.mul(&d).inv().expect("(q-q^{-1})^2 invertible");
    vec![
        PanelPoint {
            name: "non-critical (1, 0)",
            kappa: C::one(),
            c: C::zero(),
            symbolic_roots: &[],
        },
        PanelPoint {
            name: "non-critical (2, 1)",
            kappa: int(2),
            c: C::one(),
            symbolic_roots: &[],
        },
        PanelPoint {
            name: "two-root (1, [2]/(q-q^-1)^2)",
            kappa: C::one(),
            c: q(1).add(&q(-1)).mul(&d2_inv),
            symbolic_roots: &[1, 2],
        },
        PanelPoint {
            name: "two-root (q, (q^2+q^-2)/(q-q^-1)^2)",
            kappa: q(1),
            c: q(2).add(&q(-2)).mul(&d2_inv),
            symbolic_roots: &[1, 3],
        },
        PanelPoint {
            name: "one-root (2, (2q+q^-1/2)/(q-q^-1)^2)",
            kappa: int(2),
            c: int(2)
                .mul(&q(1))
                .add(&C::from_ratio(ctx, 1, 2).mul(&q(-1)))
                .mul(&d2_inv),
            symbolic_roots: &[1],
        },
        PanelPoint {
            name: "one-root (q, 2/(q-q^-1)^2)",
            kappa: q(1),
            c: int(2).mul(&d2_inv),
            symbolic_roots: &[2],
        },
    ]
}

fn random_word(rng: &mut StdRng, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| GENERATORS[rng.gen_range(0..GENERATORS.len())])
        .collect()
}

fn random_coeff<C: CoeffField>(ctx: &C::Ctx, rng: &mut StdRng) -> C {
    match rng.gen_range(0..6) {
        0 => C::one(),
        1 => C::one().neg(),
        2 => C::q_pow(ctx, 1),
        3 => C::q_pow(ctx, -1),
        4 => C::from_int(ctx, 2),
        _ => C::alpha_pow(ctx, 1),
    }
}

fn random_element<C: CoeffField>(engine: &Engine<C>, rng: &mut StdRng) -> AlgebraElement<C> {
    let mut items: Vec<(C, Word)> = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        items.push((random_coeff(engine.ctx(), rng), random_word(rng, 4)));
    }
    engine.normal_form(&items)
}

fn random_module_element<C: CoeffField>(
    ctx: &C::Ctx,
    rng: &mut StdRng,
) -> ModuleElement<C> {
    let mut m = ModuleElement::zero();
    for _ in 0..rng.gen_range(1..=5) {
        let idx = DegreeIndex::new(
            rng.gen_range(0..=3),
            rng.gen_range(0..=3),
            rng.gen_range(-3..=3),
        );
        let mut poly = CoeffPoly::zero();
        for _ in 0..rng.gen_range(1..=2) {
            poly.insert_add(
                (rng.gen_range(-2..=2), rng.gen_range(0..=2)),
                random_coeff::<C>(ctx, rng),
            );
        }
        m.insert_add(idx, poly);
    }
    m
}

// ---------------------------------------------------------------------------
// suite 1: defining relations, confluence, associativity
// ---------------------------------------------------------------------------

fn pbw_suite<C: CoeffField>(engine: &Engine<C>) -> SuiteReport {
    let mut report = SuiteReport::new("pbw");
    let ctx = engine.ctx();
    let q = |k: i64| C::q_pow(ctx, k);
    use Gen::*;

    let zero = |items: Vec<(C, Word)>| engine.normal_form(&items).is_zero();
    let qm1_inv = q(1).sub(&q(-1)).inv().expect("q - q^{-1} invertible");

    // [E_i, F_j] = delta_ij (K_i - K_i^{-1})/(q - q^{-1})
    for (i, ei) in [E1, E2].into_iter().enumerate() {
        for (j, fj) in [F1, F2].into_iter().enumerate() {
            let mut items = vec![
                (C::one(), vec![ei, fj]),
                (C::one().neg(), vec![fj, ei]),
            ];
            if i == j {
                let (k, kinv) = if i == 0 { (K1, K1Inv) } else { (K2, K2Inv) };
                items.push((qm1_inv.neg(), vec![k]));
                items.push((qm1_inv.clone(), vec![kinv]));
            }
            report.push(
                format!("relation [E{}, F{}]", i + 1, j + 1),
                zero(items),
            );
        }
    }

    // K_i^{+-1} E_j = q^{+-a_ij} E_j K_i^{+-1} and the F twin
    let cartan = [(K1, K1Inv, [2i64, -1]), (K2, K2Inv, [-1, 2])];
    for (i, (k, kinv, a)) in cartan.into_iter().enumerate() {
        for (j, (ej, fj)) in [(E1, F1), (E2, F2)].into_iter().enumerate() {
            let aij = a[j];
            for (kl, sign) in [(k, 1i64), (kinv, -1)] {
                report.push(
                    format!("relation K{}^{:+} E{}", i + 1, sign, j + 1),
                    zero(vec![
                        (C::one(), vec![kl, ej]),
                        (q(sign * aij).neg(), vec![ej, kl]),
                    ]),
                );
                report.push(
                    format!("relation K{}^{:+} F{}", i + 1, sign, j + 1),
                    zero(vec![
                        (C::one(), vec![kl, fj]),
                        (q(-sign * aij).neg(), vec![fj, kl]),
                    ]),
                );
            }
        }
    }

    // quantum Serre relations
    let bracket2 = C::q_int(ctx, 2);
    for (x, y) in [(E1, E2), (E2, E1), (F1, F2), (F2, F1)] {
        report.push(
            format!("serre {x}{x}{y}"),
            zero(vec![
                (C::one(), vec![x, x, y]),
                (bracket2.neg(), vec![x, y, x]),
                (C::one(), vec![y, x, x]),
            ]),
        );
    }

    // K_i E3 = q E3 K_i and K_i F3 = q^{-1} F3 K_i
    for (i, k) in [K1, K2].into_iter().enumerate() {
        report.push(
            format!("relation K{} E3", i + 1),
            zero(vec![(C::one(), vec![k, E3]), (q(1).neg(), vec![E3, k])]),
        );
        report.push(
            format!("relation K{} F3", i + 1),
            zero(vec![(C::one(), vec![k, F3]), (q(-1).neg(), vec![F3, k])]),
        );
    }

    // F1F3 = q^{-1}F3F1, F2F3 = qF3F2, [E1,F3] = F2K1^{-1}, [E2,F3] = -K2F1
    report.push(
        "relation F1 F3",
        zero(vec![(C::one(), vec![F1, F3]), (q(-1).neg(), vec![F3, F1])]),
    );
    report.push(
        "relation F2 F3",
        zero(vec![(C::one(), vec![F2, F3]), (q(1).neg(), vec![F3, F2])]),
    );
    report.push(
        "relation [E1, F3]",
        zero(vec![
            (C::one(), vec![E1, F3]),
            (C::one().neg(), vec![F3, E1]),
            (C::one().neg(), vec![F2, K1Inv]),
        ]),
    );
    report.push(
        "relation [E2, F3]",
        zero(vec![
            (C::one(), vec![E2, F3]),
            (C::one().neg(), vec![F3, E2]),
            (C::one(), vec![K2, F1]),
        ]),
    );

    // E1E3 = qE3E1, E2E3 = q^{-1}E3E2, [F1,E3] = E2K1^{-1}, [F2,E3] = -K2E1
    report.push(
        "relation E1 E3",
        zero(vec![(C::one(), vec![E1, E3]), (q(1).neg(), vec![E3, E1])]),
    );
    report.push(
        "relation E2 E3",
        zero(vec![(C::one(), vec![E2, E3]), (q(-1).neg(), vec![E3, E2])]),
    );
    report.push(
        "relation [F1, E3]",
        zero(vec![
            (C::one(), vec![F1, E3]),
            (C::one().neg(), vec![E3, F1]),
            (C::one().neg(), vec![E2, K1Inv]),
        ]),
    );
    report.push(
        "relation [F2, E3]",
        zero(vec![
            (C::one(), vec![F2, E3]),
            (C::one().neg(), vec![E3, F2]),
            (C::one(), vec![K2, E1]),
        ]),
    );

    // definitions of E3 and F3 as letters
    report.push(
        "definition E3 = E1E2 - q^{-1}E2E1",
        zero(vec![
            (C::one(), vec![E1, E2]),
            (q(-1).neg(), vec![E2, E1]),
            (C::one().neg(), vec![E3]),
        ]),
    );
    report.push(
        "definition F3 = F1F2 - qF2F1",
        zero(vec![
            (C::one(), vec![F1, F2]),
            (q(1).neg(), vec![F2, F1]),
            (C::one().neg(), vec![F3]),
        ]),
    );

    // derived rule regression: multiplying the letters reproduces the cache
    let via_letters = engine.multiply(&AlgebraElement::gen(E3), &AlgebraElement::gen(F3));
    report.push("derived E3*F3 rule regression", &via_letters == engine.e3f3_rule());

    // confluence: leftmost and rightmost strategies agree on random words
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut confluent = true;
    for _ in 0..200 {
        let w = random_word(&mut rng, 6);
        let items = [(C::one(), w)];
        let left = engine.normal_form_with(&items, Strategy::Leftmost);
        let right = engine.normal_form_with(&items, Strategy::Rightmost);
        if left != right {
            confluent = false;
            break;
        }
    }
    report.push("confluence on 200 random words (len <= 6)", confluent);

    // associativity on random triples
    let mut associative = true;
    for _ in 0..50 {
        let a = random_element(engine, &mut rng);
        let b = random_element(engine, &mut rng);
        let c = random_element(engine, &mut rng);
        let ab_c = engine.multiply(&engine.multiply(&a, &b), &c);
        let a_bc = engine.multiply(&a, &engine.multiply(&b, &c));
        if ab_c != a_bc {
            associative = false;
            break;
        }
    }
    report.push("associativity on 50 random triples", associative);

    report
}

// ---------------------------------------------------------------------------
// suite 2: basis recursions, filtration and degree facts
// ---------------------------------------------------------------------------

fn actions_suite<C: CoeffField>(engine: &Engine<C>) -> SuiteReport {
    let mut report = SuiteReport::new("actions");
    let ctx = engine.ctx();
    let q = |k: i64| C::q_pow(ctx, k);
    let module = WhittakerModule::standard(engine);
    use Gen::*;

    let zero = |items: Vec<(C, Word)>| engine.normal_form(&items).is_zero();
    let qm1_inv = q(1).sub(&q(-1)).inv().expect("q - q^{-1} invertible");

    // F1 F2^j = [j] F2^{j-1} F3 + q^j F2^j F1
    for j in 0..=4u32 {
        let ji = j as i64;
        let mut items = vec![(C::one(), {
            let mut w = vec![F1];
            w.extend(std::iter::repeat(F2).take(j as usize));
            w
        })];
        if j >= 1 {
            let mut w: Word = std::iter::repeat(F2).take(j as usize - 1).collect();
            w.push(F3);
            items.push((C::q_int(ctx, ji).neg(), w));
        }
        let mut w: Word = std::iter::repeat(F2).take(j as usize).collect();
        w.push(F1);
        items.push((q(ji).neg(), w));
        report.push(format!("F1 F2^{j} recursion"), zero(items));
    }

    // [E1, F2^j F3^k] = [k] F2^{j+1} F3^{k-1} K1^{-1}
    // [E2, F2^j F3^k] = [j] F2^{j-1} F3^k [K2; 1-j-k] - q^{1-k}[k] F2^j F3^{k-1} K2 F1
    for j in 0..=4u32 {
        for k in 0..=4u32 {
            let (ji, ki) = (j as i64, k as i64);
            let base: Word = std::iter::repeat(F2)
                .take(j as usize)
                .chain(std::iter::repeat(F3).take(k as usize))
                .collect();
            let mut lhs1 = vec![E1];
            lhs1.extend(base.clone());
            let mut rhs1 = base.clone();
            rhs1.push(E1);
            let mut items = vec![(C::one(), lhs1), (C::one().neg(), rhs1)];
            if k >= 1 {
                let mut w: Word = std::iter::repeat(F2).take(j as usize + 1).collect();
                w.extend(std::iter::repeat(F3).take(k as usize - 1));
                w.push(K1Inv);
                items.push((C::q_int(ctx, ki).neg(), w));
            }
            report.push(format!("[E1, F2^{j} F3^{k}]"), zero(items));

            let mut lhs2 = vec![E2];
            lhs2.extend(base.clone());
            let mut rhs2 = base.clone();
            rhs2.push(E2);
            let mut items = vec![(C::one(), lhs2), (C::one().neg(), rhs2)];
            if j >= 1 {
                // [K2; 1-j-k] = (q^{1-j-k} K2 - q^{j+k-1} K2^{-1})/(q - q^{-1})
                let a = 1 - ji - ki;
                let head: Word = std::iter::repeat(F2)
                    .take(j as usize - 1)
                    .chain(std::iter::repeat(F3).take(k as usize))
                    .collect();
                let mut w = head.clone();
                w.push(K2);
                items.push((
                    C::q_int(ctx, ji).mul(&qm1_inv).mul(&q(a)).neg(),
                    w,
                ));
                let mut w = head;
                w.push(K2Inv);
                items.push((C::q_int(ctx, ji).mul(&qm1_inv).mul(&q(-a)), w));
            }
            if k >= 1 {
                let mut w: Word = std::iter::repeat(F2).take(j as usize).collect();
                w.extend(std::iter::repeat(F3).take(k as usize - 1));
                w.push(K2);
                w.push(F1);
                items.push((q(1 - ki).mul(&C::q_int(ctx, ki)), w));
            }
            report.push(format!("[E2, F2^{j} F3^{k}]"), zero(items));
        }
    }

    // filtration facts on random basis monomials
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xAC7);
    let alpha = module.eta().alpha().clone();
    let mut e1_drops = true;
    let mut e2_drops = true;
    let mut e1_keeps_f_degree = true;
    let mut e2_lowers_f_degree = true;
    for _ in 0..50 {
        let idx = DegreeIndex::new(
            rng.gen_range(0..=4),
            rng.gen_range(0..=4),
            rng.gen_range(-3..=3),
        );
        let poly = CoeffPoly::monomial(
            rng.gen_range(-2..=2),
            rng.gen_range(0..=2),
            random_coeff::<C>(ctx, &mut rng),
        );
        let m = ModuleElement::basis(idx, poly);
        let n = idx.j + idx.k;
        let dropped = module
            .act_gen(E1, &m)
            .sub(&m.scale(&alpha.mul(&q(idx.l))));
        if !dropped.is_zero() && dropped.degree().unwrap() >= idx {
            e1_drops = false;
        }
        if module.act_gen(E1, &m).f_degree().unwrap_or(0) > n {
            e1_keeps_f_degree = false;
        }
        let e2m = module.act_gen(E2, &m);
        if !e2m.is_zero() {
            if e2m.degree().unwrap() >= idx {
                e2_drops = false;
            }
            if e2m.f_degree().unwrap_or(0) + 1 > n {
                e2_lowers_f_degree = false;
            }
        }
    }
    report.push("(E1 - q^l alpha) strictly lowers degree", e1_drops);
    report.push("E2 strictly lowers degree", e2_drops);
    report.push("E1 preserves total F-degree", e1_keeps_f_degree);
    report.push("E2 lowers total F-degree by one", e2_lowers_f_degree);

    // two-path consistency: acting by the PBW normal form of a word equals
    // folding the letter actions
    let mut rng = StdRng::seed_from_u64(SEED ^ 0x2A37);
    let mut consistent = true;
    for _ in 0..50 {
        let w = random_word(&mut rng, 4);
        let m = random_module_element::<C>(ctx, &mut rng);
        let nf = engine.word_element(&w);
        if module.act_algebra(&nf, &m) != module.act_word(&w, &m) {
            consistent = false;
            break;
        }
    }
    report.push("two-path action consistency on 50 random words", consistent);

    // direct-sum reduction: F2^j F3^k K2^l Q v dies mod J(kappa,c) iff
    // Q(kappa, c) = 0
    let kappa = C::from_int(ctx, 2);
    let c = C::q_pow(ctx, 1);
    let ideal = IdealSpec::maximal(kappa.clone(), c.clone()).unwrap();
    let mut membership_ok = true;
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xD1);
    for _ in 0..25 {
        let idx = DegreeIndex::new(
            rng.gen_range(0..=3),
            rng.gen_range(0..=3),
            rng.gen_range(-3..=3),
        );
        let mut poly = CoeffPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            poly.insert_add(
                (rng.gen_range(-2..=2), rng.gen_range(0..=2)),
                random_coeff::<C>(ctx, &mut rng),
            );
        }
        let dies = module
            .reduce_mod(&ModuleElement::basis(idx, poly.clone()), &ideal)
            .is_zero();
        let in_ideal = poly.eval_at(&kappa, &c).is_zero();
        if dies != in_ideal {
            membership_ok = false;
            break;
        }
    }
    report.push(
        "reduction kills a basis vector iff its coefficient lies in J",
        membership_ok,
    );

    report
}

// ---------------------------------------------------------------------------
// suite 3: the u(n,l,Q) family
// ---------------------------------------------------------------------------

fn q_poly_choices<C: CoeffField>() -> Vec<(&'static str, CoeffPoly<C>)> {
    vec![
        ("1", CoeffPoly::one()),
        ("K", CoeffPoly::k_pow(1)),
        ("C1", CoeffPoly::c1()),
        ("K^-1 C1", CoeffPoly::monomial(-1, 1, C::one())),
    ]
}

fn u_family_suite<C: CoeffField>(engine: &Engine<C>, cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("u-family");
    let ctx = engine.ctx();
    let module = WhittakerModule::standard(engine);
    let alpha = module.eta().alpha().clone();

    // (E1 - alpha q^l) u(n,l,Q) = 0 exactly in M(eta)
    let mut annihilated = true;
    for n in 0..=4u32 {
        for l in -2..=2i64 {
            for (_, q_poly) in q_poly_choices::<C>() {
                let u = module.u_element(n, l, &q_poly).unwrap();
                let image = module
                    .act_gen(Gen::E1, &u)
                    .sub(&u.scale(&alpha.mul(&C::q_pow(ctx, l))));
                if !image.is_zero() {
                    annihilated = false;
                }
            }
        }
    }
    report.push(
        "(E1 - alpha q^l) u(n,l,Q) = 0 for n <= 4, l in -2..2, Q in {1,K,C1,K^-1C1}",
        annihilated,
    );

    // E2 u(0,l,Q) = 0
    let mut degenerate = true;
    for l in -2..=2i64 {
        for (_, q_poly) in q_poly_choices::<C>() {
            let u = module.u_element(0, l, &q_poly).unwrap();
            if !module.act_gen(Gen::E2, &u).is_zero() {
                degenerate = false;
            }
        }
    }
    report.push("E2 u(0,l,Q) = 0", degenerate);

    // E2 u(n,l,Q) equals the closed form exactly in M(eta)
    let mut exact = true;
    for n in 1..=4u32 {
        for l in -2..=2i64 {
            for (_, q_poly) in q_poly_choices::<C>() {
                let u = module.u_element(n, l, &q_poly).unwrap();
                let lhs = module.act_gen(Gen::E2, &u);
                let rhs = module.e2_rhs(n, l, &q_poly).unwrap();
                if lhs != rhs {
                    exact = false;
                }
            }
        }
    }
    report.push(
        "E2 u(n,l,Q) = e2_rhs(n,l,Q) exactly in M(eta) for n <= 4",
        exact,
    );

    // and hence the congruence mod J(kappa,c) on the reference panel
    let mut congruent = true;
    let panel = reference_panel::<C>(ctx);
    for point in panel.iter().take(5) {
        let ideal = IdealSpec::maximal(point.kappa.clone(), point.c.clone()).unwrap();
        for n in 1..=4u32 {
            let u = module.u_element(n, 0, &CoeffPoly::one()).unwrap();
            let diff = module
                .act_gen(Gen::E2, &u)
                .sub(&module.e2_rhs(n, 0, &CoeffPoly::one()).unwrap());
            if !module.reduce_mod(&diff, &ideal).is_zero() {
                congruent = false;
            }
        }
    }
    report.push(
        "E2 closed form congruent mod J(kappa,c) on the 5-point panel",
        congruent,
    );

    let _ = cfg;
    report
}

// ---------------------------------------------------------------------------
// suite 4: F1 and C1 closed forms
// ---------------------------------------------------------------------------

fn f1_c1_suite<C: CoeffField>(engine: &Engine<C>) -> SuiteReport {
    let mut report = SuiteReport::new("f1-c1");
    let module = WhittakerModule::standard(engine);
    let casimir = engine.casimir_element();

    for n in 0..=3u32 {
        let mut f1_ok = true;
        let mut c1_ok = true;
        for l in [-1i64, 0, 1, 2] {
            for (_, q_poly) in q_poly_choices::<C>().into_iter().take(3) {
                let u = module.u_element(n, l, &q_poly).unwrap();
                if module.act_gen(Gen::F1, &u) != module.f1_rhs(n, l, &q_poly).unwrap() {
                    f1_ok = false;
                }
                if module.act_algebra(&casimir, &u) != module.c1_rhs(n, l, &q_poly).unwrap() {
                    c1_ok = false;
                }
            }
        }
        report.push(format!("F1 u({n},l,Q) closed form exact"), f1_ok);
        report.push(format!("C1 u({n},l,Q) closed form exact"), c1_ok);
    }

    report
}

// ---------------------------------------------------------------------------
// suite 5: powers of the operator g
// ---------------------------------------------------------------------------

fn g_power_suite<C: CoeffField>(engine: &Engine<C>, cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("g-power");
    let ctx = engine.ctx();
    let module = WhittakerModule::standard(engine);

    for n in 0..=5u32 {
        let mut ok = true;
        for (_, q_poly) in q_poly_choices::<C>().into_iter().take(3) {
            if module.g_power(n, &q_poly) != module.u_element(n, 0, &q_poly).unwrap() {
                ok = false;
            }
        }
        report.push(format!("g^{n} Q v = u({n},0,Q) for Q in {{1,K,C1}}"), ok);
    }

    // ladder g^{n_+ - n_-} u_- = u_+ on two-root panel points, exactly in
    // M(eta) and in the quotient
    for point in reference_panel::<C>(ctx) {
        let crit = criticality(engine, &point.kappa, &point.c, cfg.scan_bound).unwrap();
        let (Some(nm), Some(np)) = (crit.n_minus, crit.n_plus) else {
            continue;
        };
        if nm == np {
            continue;
        }
        let u_minus = module.u_element(nm, 0, &CoeffPoly::one()).unwrap();
        let u_plus = module.u_element(np, 0, &CoeffPoly::one()).unwrap();
        let g = module.g_element();
        let mut ladder = u_minus;
        for _ in 0..(np - nm) {
            ladder = module.act_algebra(&g, &ladder);
        }
        let exact = ladder == u_plus;
        let ideal = IdealSpec::maximal(point.kappa.clone(), point.c.clone()).unwrap();
        let reduced =
            module.reduce_mod(&ladder, &ideal) == module.reduce_mod(&u_plus, &ideal);
        report.push(format!("ladder g^{} u_- = u_+ at {}", np - nm, point.name), exact && reduced);
    }

    report
}

// ---------------------------------------------------------------------------
// suite 6: Whittaker-vector solver and submodule structure
// ---------------------------------------------------------------------------

fn solver_suite<C: CoeffField>(engine: &Engine<C>, cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("solver");
    let ctx = engine.ctx();
    let module = WhittakerModule::standard(engine);
    let panel = reference_panel::<C>(ctx);

    for (pi, point) in panel.iter().enumerate() {
        let crit = criticality(engine, &point.kappa, &point.c, cfg.scan_bound).unwrap();
        if cfg.pin_reference_expectations {
            report.push(
                format!("classification: roots of h_n at {}", point.name),
                crit.roots == point.symbolic_roots,
            );
        }
        let window = crit.n_plus.map(|n| n + 1).unwrap_or(3).max(3);
        let l = if pi % 2 == 0 { 0 } else { 1 };
        let ideal = IdealSpec::maximal(point.kappa.clone(), point.c.clone()).unwrap();

        let outcome =
            solve_whittaker_vectors(&module, &point.kappa, &point.c, l, window).unwrap();
        let expected_dim = 1 + crit.roots.iter().filter(|&&n| n <= window).count();
        report.push(
            format!(
                "classification: solver dimension {} at {} (window {})",
                expected_dim, point.name, window
            ),
            outcome.basis.len() == expected_dim,
        );

        // solver outputs satisfy the defining equations exactly
        let eigen = module.eta().alpha().mul(&C::q_pow(ctx, l));
        let satisfied = outcome.basis.iter().all(|w| {
            let e1 = module
                .reduce_mod(&module.act_gen(Gen::E1, w), &ideal)
                .sub(&w.scale(&eigen));
            let e2 = module.reduce_mod(&module.act_gen(Gen::E2, w), &ideal);
            e1.is_zero() && e2.is_zero()
        });
        report.push(
            format!("classification: solver outputs are Whittaker vectors at {}", point.name),
            satisfied,
        );

        // the closed-form family spans: every solver output decomposes over
        // {K2^l v} u {u(n,l,1) : roots n} by exact elimination
        let mut family = vec![ModuleElement::basis(
            DegreeIndex::new(0, 0, l),
            CoeffPoly::one(),
        )];
        for &n in &crit.roots {
            if n <= window {
                let u = module.u_element(n, l, &CoeffPoly::one()).unwrap();
                family.push(module.reduce_mod(&u, &ideal));
            }
        }
        let decomposes = outcome
            .basis
            .iter()
            .all(|w| decompose_over(w, &family).is_some());
        report.push(
            format!("classification: solutions decompose over the closed forms at {}", point.name),
            decomposes,
        );

        // cross-check by full exact elimination where the window is small
        if window <= 3 {
            let direct =
                solve_whittaker_vectors_direct(&module, &point.kappa, &point.c, l, window)
                    .unwrap();
            let agree = direct.basis.len() == outcome.basis.len()
                && direct.basis.iter().all(|w| decompose_over(w, &family).is_some())
                && direct.method == SolveMethod::DirectElimination;
            report.push(
                format!("classification: direct elimination agrees at {}", point.name),
                agree,
            );
        }

        // eigenvalues K u_eps = kappa_eps u_eps and C1 u_eps = c_eps u_eps
        for eps in [&crit.minus, &crit.plus].into_iter().flatten() {
            let u = module.u_element(eps.n, 0, &CoeffPoly::one()).unwrap();
            let u_red = module.reduce_mod(&u, &ideal);
            let k_img =
                module.reduce_mod(&module.act_algebra(&engine.k_element(), &u_red), &ideal);
            let c_img = module.reduce_mod(
                &module.act_algebra(&engine.casimir_element(), &u_red),
                &ideal,
            );
            let ok = k_img == u_red.scale(&eps.kappa_eps) && c_img == u_red.scale(&eps.c_eps);
            report.push(
                format!(
                    "classification: K, C1 eigenvalues on u({},0,1) at {}",
                    eps.n, point.name
                ),
                ok,
            );
        }

        // eigenvalue separation underlying the Hom computation
        if let (Some(minus), Some(plus)) = (&crit.minus, &crit.plus) {
            let pairs = [
                (&point.kappa, &point.c),
                (&minus.kappa_eps, &minus.c_eps),
                (&plus.kappa_eps, &plus.c_eps),
            ];
            let mut distinct = true;
            for a in 0..pairs.len() {
                for b in (a + 1)..pairs.len() {
                    // the (kappa_-, c_-) and (kappa_+, c_+) pairs coincide
                    // exactly when the two roots coincide
                    if (a, b) == (1, 2) && minus.n == plus.n {
                        continue;
                    }
                    if pairs[a].0 == pairs[b].0 && pairs[a].1 == pairs[b].1 {
                        distinct = false;
                    }
                }
            }
            report.push(
                format!("classification: eigenvalue pairs distinct at {}", point.name),
                distinct,
            );
        }
    }

    // structure: composition series on the three reference pairs
    let reference = [&panel[0], &panel[2], &panel[4]];
    let expected_kinds = [
        CompositionKind::Irreducible,
        CompositionKind::TwoStep(1, 2),
        CompositionKind::UniqueProper(1),
    ];
    for (point, expected) in reference.iter().zip(expected_kinds) {
        let rep = composition_report(&module, &point.kappa, &point.c, cfg.scan_bound).unwrap();
        let ok = if cfg.pin_reference_expectations {
            rep.kind == expected
        } else {
            // an evaluated run may move roots; require consistency instead
            match (&rep.kind, rep.criticality.roots.len()) {
                (CompositionKind::Irreducible, 0) => true,
                (CompositionKind::UniqueProper(_), 1) => true,
                (CompositionKind::TwoStep(_, _), 2) => true,
                _ => false,
            }
        };
        report.push(
            format!("structure: composition report at {}", point.name),
            ok,
        );
    }

    // structure: membership oracle on the two-root pair
    let two_root = &panel[2];
    let crit = criticality(engine, &two_root.kappa, &two_root.c, cfg.scan_bound).unwrap();
    if let (Some(nm), Some(np)) = (crit.n_minus, crit.n_plus) {
        let ideal = IdealSpec::maximal(two_root.kappa.clone(), two_root.c.clone()).unwrap();
        let u_plus = module.reduce_mod(
            &module.u_element(np, 0, &CoeffPoly::one()).unwrap(),
            &ideal,
        );
        let u_minus = module.reduce_mod(
            &module.u_element(nm, 0, &CoeffPoly::one()).unwrap(),
            &ideal,
        );
        let vbar = ModuleElement::vacuum();
        let in_minus =
            submodule_membership(&module, &u_plus, nm, &two_root.kappa, &two_root.c, 8);
        let v_not_in_minus =
            submodule_membership(&module, &vbar, nm, &two_root.kappa, &two_root.c, 8);
        let minus_not_in_plus =
            submodule_membership(&module, &u_minus, np, &two_root.kappa, &two_root.c, 8);
        report.push("structure: u_+ lies in W~_-", in_minus == Ok(true));
        report.push("structure: v does not lie in W~_-", v_not_in_minus == Ok(false));
        report.push(
            "structure: u_- does not lie in W~_+",
            minus_not_in_plus == Ok(false),
        );
    }

    report
}

// ---------------------------------------------------------------------------
// suite 7: the center of the algebra
// ---------------------------------------------------------------------------

fn center_suite<C: CoeffField>(engine: &Engine<C>, cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("center");
    let ctx = engine.ctx();
    let module = WhittakerModule::standard(engine);
    let center = center_elements(engine);

    // 24 exact centrality commutators
    for (name, z) in [("Z1", &center.z1), ("Z2", &center.z2), ("Z3", &center.z3)] {
        let mut all_zero = true;
        for g in GENERATORS {
            if g == Gen::E3 || g == Gen::F3 {
                continue; // composite letters; covered by the eight generators
            }
            if !engine.commutator(z, &AlgebraElement::gen(g)).is_zero() {
                all_zero = false;
            }
        }
        report.push(format!("centrality of {name} against the 8 generators"), all_zero);
    }

    // eigenvalues and the sextic on the panel
    for point in reference_panel::<C>(ctx) {
        let rep = casimir_eigen_check(&module, &center, &point.kappa, &point.c).unwrap();
        report.push_detail(
            format!("center eigenvalues and sextic at {}", point.name),
            rep.passed() && rep.sextic_display_ok,
            rep.rederived_coefficients
                .as_ref()
                .map(|(c4, c2)| format!("re-derived coefficients: t^4: {c4}, t^2: {c2}")),
        );
    }

    // the displayed sextic also holds at a symbolic-flavored pair
    let extra_kappa = C::alpha_pow(ctx, 1);
    let extra_c = C::q_pow(ctx, 1);
    let rep = casimir_eigen_check(&module, &center, &extra_kappa, &extra_c).unwrap();
    report.push(
        "center eigenvalues and sextic at (alpha, q)",
        rep.passed() && rep.sextic_display_ok,
    );

    // on critical pairs the generators act on u_eps with the eigenvalues of
    // the (kappa_eps, c_eps) parameters
    for point in reference_panel::<C>(ctx) {
        let crit = criticality(engine, &point.kappa, &point.c, cfg.scan_bound).unwrap();
        let ideal = IdealSpec::maximal(point.kappa.clone(), point.c.clone()).unwrap();
        for eps in [&crit.minus, &crit.plus].into_iter().flatten() {
            let u_red = module.reduce_mod(
                &module.u_element(eps.n, 0, &CoeffPoly::one()).unwrap(),
                &ideal,
            );
            let d = C::q_pow(ctx, 1).sub(&C::q_pow(ctx, -1));
            let d2 = d.mul(&d);
            let a = d2
                .mul(&eps.c_eps)
                .add(&C::q_pow(ctx, -3).mul(&eps.kappa_eps.inv().unwrap()));
            let b = d2.mul(&eps.c_eps).add(&C::q_pow(ctx, 3).mul(&eps.kappa_eps));
            let image = module.reduce_mod(&module.act_algebra(&center.z1, &u_red), &ideal);
            let ok = image == u_red.scale(&a.mul(&b));
            report.push(
                format!("Z1 eigenvalue on u({},0,1) at {}", eps.n, point.name),
                ok,
            );
        }
    }

    report
}

// ---------------------------------------------------------------------------

pub fn run_suite<C: CoeffField>(
    engine: &Engine<C>,
    suite: SuiteName,
    cfg: &VerifyConfig,
) -> SuiteReport {
    match suite {
        SuiteName::Pbw => pbw_suite(engine),
        SuiteName::Actions => actions_suite(engine),
        SuiteName::UFamily => u_family_suite(engine, cfg),
        SuiteName::F1C1 => f1_c1_suite(engine),
        SuiteName::GPower => g_power_suite(engine, cfg),
        SuiteName::Solver => solver_suite(engine, cfg),
        SuiteName::Center => center_suite(engine, cfg),
    }
}

pub fn run_suites<C: CoeffField>(
    engine: &Engine<C>,
    suites: &[SuiteName],
    cfg: &VerifyConfig,
) -> Vec<SuiteReport> {
    suites.iter().map(|s| run_suite(engine, *s, cfg)).collect()
}

/// Sanity helper shared with the linear-algebra layer: the specialized
/// dimension of a symbolic system never undercounts.
pub fn specialized_nullity_upper_bounds<C: CoeffField>(
    rows: &[Vec<C>],
    ncols: usize,
    point: &crate::scalar::EvalPoint,
) -> Option<(usize, usize)> {
    let numeric: Option<Vec<Vec<crate::field::Numeric>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.specialize(point).ok().map(crate::field::Numeric))
                .collect()
        })
        .collect();
    let numeric = numeric?;
    let sym = linalg::nullspace(rows, ncols).len();
    let num = linalg::nullspace(&numeric, ncols).len();
    Some((sym, num))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn suite_names_roundtrip() {
        for s in SuiteName::ALL {
            assert_eq!(SuiteName::parse(s.as_str()), Some(s));
        }
        assert_eq!(SuiteName::parse("nope"), None);
    }

    #[test]
    fn reference_panel_has_six_points() {
        let panel = reference_panel::<Scalar>(&());
        assert_eq!(panel.len(), 6);
        let expected: Vec<&[u32]> = vec![&[], &[], &[1, 2], &[1, 3], &[1], &[2]];
        for (p, e) in panel.iter().zip(expected) {
            assert_eq!(p.symbolic_roots, e, "{}", p.name);
        }
    }

    #[test]
    fn specialization_bound_holds_on_a_small_system() {
        // q x + y = 0 specialized keeps nullity 1
        let rows = vec![vec![Scalar::q_pow(1), Scalar::one()]];
        let (sym, num) =
            specialized_nullity_upper_bounds(&rows, 2, &crate::scalar::EvalPoint::standard())
                .unwrap();
        assert_eq!(sym, 1);
        assert!(num >= sym);
    }
}
