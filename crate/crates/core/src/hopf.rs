//! Braided Hopf algebra objects and their machine verification: the defining
//! axioms, the derived antipode identities, characters and cocharacters,
//! twisted antipodes, and (braided) modular pairs in involution.

use crate::linalg::{LinearMap, Space};
use crate::moncat::{iterate_comul, push_equality, BraidedCategory, CatObject};
use crate::report::CheckReport;
use crate::{Error, Result};

/// A Hopf algebra object in a braided category: the five structure tensors
/// plus the category handle and the carrier object.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfObject {
    cat: BraidedCategory,
    carrier: CatObject,
    mul: LinearMap,
    unit: LinearMap,
    comul: LinearMap,
    counit: LinearMap,
    antipode: LinearMap,
}

impl HopfObject {
    /// Checked constructor: validates shapes and that every structure tensor
    /// is a morphism of the category (graded-homogeneous or equivariant).
    /// The Hopf axioms themselves are the business of [`verify_hopf`].
    pub fn new(
        cat: BraidedCategory,
        carrier: CatObject,
        mul: LinearMap,
        unit: LinearMap,
        comul: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
    ) -> Result<HopfObject> {
        cat.check_object(&carrier)?;
        let h = carrier.space();
        let hh = h.tensor(h);
        let unit_space = Space::unit(h.field());
        let shapes_ok = *mul.domain() == hh
            && *mul.codomain() == *h
            && *unit.domain() == unit_space
            && *unit.codomain() == *h
            && *comul.domain() == *h
            && *comul.codomain() == hh
            && *counit.domain() == *h
            && *counit.codomain() == unit_space
            && *antipode.domain() == *h
            && *antipode.codomain() == *h;
        if !shapes_ok {
            return Err(Error::SpaceMismatch(
                "Hopf structure tensors have wrong shapes".into(),
            ));
        }
        let hh_obj = cat.tensor_obj(&carrier, &carrier)?;
        let unit_obj = cat.unit_object();
        for (name, map, dom, cod) in [
            ("multiplication", &mul, &hh_obj, &carrier),
            ("unit", &unit, &unit_obj, &carrier),
            ("comultiplication", &comul, &carrier, &hh_obj),
            ("counit", &counit, &carrier, &unit_obj),
            ("antipode", &antipode, &carrier, &carrier),
        ] {
            if let Some((basis, detail)) = cat.morphism_violation(map, dom, cod)? {
                return Err(Error::VerificationFailed(format!(
                    "{name} is not a morphism of the category (at {basis}: {detail})"
                )));
            }
        }
        Ok(HopfObject {
            cat,
            carrier,
            mul,
            unit,
            comul,
            counit,
            antipode,
        })
    }

    /// Checked constructor that additionally requires all Hopf axioms; this
    /// is what catalog entries go through.
    pub fn verified(
        cat: BraidedCategory,
        carrier: CatObject,
        mul: LinearMap,
        unit: LinearMap,
        comul: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
    ) -> Result<HopfObject> {
        let h = HopfObject::new(cat, carrier, mul, unit, comul, counit, antipode)?;
        let report = verify_hopf(&h)?;
        if let Some(item) = report.first_failure() {
            return Err(Error::VerificationFailed(format!(
                "Hopf axiom '{}' fails{}",
                item.name,
                item.witness
                    .as_ref()
                    .map(|w| format!(" at {} (lhs = {}, rhs = {})", w.basis, w.lhs, w.rhs))
                    .unwrap_or_default()
            )));
        }
        Ok(h)
    }

    /// Unchecked constructor for negative tests; shapes are still asserted.
    pub fn new_unchecked(
        cat: BraidedCategory,
        carrier: CatObject,
        mul: LinearMap,
        unit: LinearMap,
        comul: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
    ) -> HopfObject {
        HopfObject {
            cat,
            carrier,
            mul,
            unit,
            comul,
            counit,
            antipode,
        }
    }

    pub fn cat(&self) -> &BraidedCategory {
        &self.cat
    }

    pub fn carrier(&self) -> &CatObject {
        &self.carrier
    }

    pub fn space(&self) -> &Space {
        self.carrier.space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    pub fn mul(&self) -> &LinearMap {
        &self.mul
    }

    pub fn unit(&self) -> &LinearMap {
        &self.unit
    }

    pub fn comul(&self) -> &LinearMap {
        &self.comul
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn id(&self) -> LinearMap {
        LinearMap::identity(self.space())
    }

    /// Identity on H^{(x)n}.
    pub fn id_pow(&self, n: usize) -> LinearMap {
        LinearMap::identity(&self.space().tensor_power(n))
    }

    /// The braiding psi_{H,H}.
    pub fn braiding_hh(&self) -> Result<LinearMap> {
        self.cat.braiding(&self.carrier, &self.carrier)
    }

    /// Right-nested iterated comultiplication Delta^n: H -> H^{n+1}.
    pub fn comul_power(&self, n: usize) -> Result<LinearMap> {
        iterate_comul(&self.comul, self.space(), n)
    }

    /// 1^{(x)pos} (x) psi_{H,H} (x) 1^{(x)(total-pos-2)} on H^{(x)total}.
    pub fn psi_at(&self, total: usize, pos: usize) -> Result<LinearMap> {
        debug_assert!(pos + 2 <= total);
        let pre = self.id_pow(pos);
        let post = self.id_pow(total - pos - 2);
        pre.tensor(&self.braiding_hh()?)?.tensor(&post)
    }

    /// eta . eps: H -> H.
    pub fn unit_counit(&self) -> Result<LinearMap> {
        self.unit.compose(&self.counit)
    }

    /// Negate one structure constant; used by mutation-sensitivity tests.
    pub fn with_mutated_tensor(&self, which: TensorName, row: usize, col: usize) -> HopfObject {
        let mut h = self.clone();
        let target = match which {
            TensorName::Mul => &mut h.mul,
            TensorName::Unit => &mut h.unit,
            TensorName::Comul => &mut h.comul,
            TensorName::Counit => &mut h.counit,
            TensorName::Antipode => &mut h.antipode,
        };
        *target = negate_entry(target, row, col);
        h
    }

    pub fn tensor_named(&self, which: TensorName) -> &LinearMap {
        match which {
            TensorName::Mul => &self.mul,
            TensorName::Unit => &self.unit,
            TensorName::Comul => &self.comul,
            TensorName::Counit => &self.counit,
            TensorName::Antipode => &self.antipode,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorName {
    Mul,
    Unit,
    Comul,
    Counit,
    Antipode,
}

pub const ALL_TENSORS: [TensorName; 5] = [
    TensorName::Mul,
    TensorName::Unit,
    TensorName::Comul,
    TensorName::Counit,
    TensorName::Antipode,
];

fn negate_entry(map: &LinearMap, row: usize, col: usize) -> LinearMap {
    let mut triples = Vec::new();
    for (j, c) in map.cols().iter().enumerate() {
        for (r, s) in c {
            let s = if *r == row && j == col { s.neg() } else { s.clone() };
            triples.push((*r, j, s));
        }
    }
    LinearMap::from_triples(map.domain().clone(), map.codomain().clone(), &triples)
        .expect("entries unchanged structurally")
}

/// One report entry per Hopf axiom, each an exact matrix equality with a
/// witness basis vector on failure.
pub fn verify_hopf(h: &HopfObject) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let id = h.id();
    let m = &h.mul;
    let unit = &h.unit;
    let comul = &h.comul;
    let eps = &h.counit;

    // associativity m(1 (x) m) = m(m (x) 1)
    let lhs = m.compose(&id.tensor(m)?)?;
    let rhs = m.compose(&m.tensor(&id)?)?;
    push_equality(&mut report, "associativity", &lhs, &rhs);

    // unit m(eta (x) 1) = 1 = m(1 (x) eta)
    let left = m.compose(&unit.tensor(&id)?)?;
    let right = m.compose(&id.tensor(unit)?)?;
    push_both(&mut report, "unit", &left, &id, &right, &id);

    // coassociativity (1 (x) Delta)Delta = (Delta (x) 1)Delta
    let lhs = id.tensor(comul)?.compose(comul)?;
    let rhs = comul.tensor(&id)?.compose(comul)?;
    push_equality(&mut report, "coassociativity", &lhs, &rhs);

    // counit (eps (x) 1)Delta = 1 = (1 (x) eps)Delta
    let left = eps.tensor(&id)?.compose(comul)?;
    let right = id.tensor(eps)?.compose(comul)?;
    push_both(&mut report, "counit", &left, &id, &right, &id);

    // braided compatibility Delta m = (m (x) m)(1 (x) psi (x) 1)(Delta (x) Delta)
    let lhs = comul.compose(m)?;
    let mid = h.psi_at(4, 1)?;
    let rhs = m.tensor(m)?.compose(&mid)?.compose(&comul.tensor(comul)?)?;
    push_equality(&mut report, "compatibility", &lhs, &rhs);

    // Delta eta = eta (x) eta
    let lhs = comul.compose(unit)?;
    let rhs = unit.tensor(unit)?;
    push_equality(&mut report, "comul_unit", &lhs, &rhs);

    // eps m = eps (x) eps
    let lhs = eps.compose(m)?;
    let rhs = eps.tensor(eps)?;
    push_equality(&mut report, "counit_mul", &lhs, &rhs);

    // eps eta = id_I
    let lhs = eps.compose(unit)?;
    let rhs = LinearMap::identity(&Space::unit(h.space().field()));
    push_equality(&mut report, "counit_unit", &lhs, &rhs);

    // antipode m(S (x) 1)Delta = eta eps = m(1 (x) S)Delta
    let s = &h.antipode;
    let target = h.unit_counit()?;
    let left = m.compose(&s.tensor(&id)?)?.compose(comul)?;
    let right = m.compose(&id.tensor(s)?)?.compose(comul)?;
    push_both(&mut report, "antipode", &left, &target, &right, &target);

    Ok(report)
}

fn push_both(
    report: &mut CheckReport,
    name: &str,
    l1: &LinearMap,
    r1: &LinearMap,
    l2: &LinearMap,
    r2: &LinearMap,
) {
    let d1 = l1.first_difference(r1);
    let d2 = l2.first_difference(r2);
    match d1.or(d2) {
        None => report.push_pass(name),
        Some((j, l, r)) => report.push_verdict(
            name,
            false,
            Some(crate::report::Witness {
                basis: l1.domain().label(j).to_string(),
                lhs: l,
                rhs: r,
            }),
        ),
    }
}

/// The standard consequences of the axioms: the antipode is a braided
/// anti-(co)algebra map, fixes the unit and counit, and the double-coproduct
/// of a product expands through three interleaved braidings.
pub fn derived_identities(h: &HopfObject) -> Result<CheckReport> {
    let axioms = verify_hopf(h)?;
    if !axioms.all_passed() {
        return Err(Error::PreconditionFailed(format!(
            "Hopf axioms do not hold (first failure: {})",
            axioms.first_failure().map(|i| i.name.as_str()).unwrap_or("?")
        )));
    }
    let mut report = CheckReport::new();
    let m = &h.mul;
    let s = &h.antipode;
    let comul = &h.comul;
    let psi = h.braiding_hh()?;
    let ss = s.tensor(s)?;

    // S m = m psi (S (x) S) = m (S (x) S) psi
    let lhs = s.compose(m)?;
    let mid = m.compose(&psi)?.compose(&ss)?;
    let rhs = m.compose(&ss)?.compose(&psi)?;
    push_both(&mut report, "antipode_antihom_mul", &lhs, &mid, &lhs, &rhs);

    // Delta S = psi (S (x) S) Delta = (S (x) S) psi Delta
    let lhs = comul.compose(s)?;
    let mid = psi.compose(&ss)?.compose(comul)?;
    let rhs = ss.compose(&psi)?.compose(comul)?;
    push_both(&mut report, "antipode_antihom_comul", &lhs, &mid, &lhs, &rhs);

    // S eta = eta
    push_equality(&mut report, "antipode_unit", &s.compose(&h.unit)?, &h.unit);

    // eps S = eps
    push_equality(
        &mut report,
        "counit_antipode",
        &h.counit.compose(s)?,
        &h.counit,
    );

    // Delta^2 m = (m,m,m)(1,psi,1,1,1)(1,1,1,psi,1)(1,1,psi,1,1)(Delta^2 (x) Delta^2)
    let d2 = h.comul_power(2)?;
    let lhs = d2.compose(m)?;
    let rhs = comul2_mul_expansion(h, &d2, &psi)?;
    push_equality(&mut report, "comul2_mul_expansion", &lhs, &rhs);

    Ok(report)
}

/// The right-hand side of the double-coproduct expansion, assembled column
/// by column so the six-factor intermediates never materialize as spaces.
fn comul2_mul_expansion(
    h: &HopfObject,
    comul2: &LinearMap,
    psi: &LinearMap,
) -> Result<LinearMap> {
    use std::collections::BTreeMap;
    let d = h.dim();
    let domain = h.space().tensor_power(2);
    let codomain = h.space().tensor_power(3);
    let mul = &h.mul;
    let mut cols = Vec::with_capacity(domain.dim());
    for col in 0..domain.dim() {
        let (a, b) = (col / d, col % d);
        let mut terms: BTreeMap<Vec<u32>, crate::exactnum::Scalar> = BTreeMap::new();
        for (ra, ca) in comul2.col(a) {
            for (rb, cb) in comul2.col(b) {
                let mut key = vec![0u32; 6];
                let (mut x, mut y) = (*ra, *rb);
                for t in (0..3).rev() {
                    key[t] = (x % d) as u32;
                    x /= d;
                    key[3 + t] = (y % d) as u32;
                    y /= d;
                }
                let v = ca.mul(cb)?;
                if !v.is_zero() {
                    terms.insert(key, v);
                }
            }
        }
        // braidings at positions (2,3), then (3,4), then (1,2)
        for pos in [2usize, 3, 1] {
            let mut next: BTreeMap<Vec<u32>, crate::exactnum::Scalar> = BTreeMap::new();
            for (key, coeff) in &terms {
                let in_flat = key[pos] as usize * d + key[pos + 1] as usize;
                for (row, s) in psi.col(in_flat) {
                    let mut nk = key.clone();
                    nk[pos] = (row / d) as u32;
                    nk[pos + 1] = (row % d) as u32;
                    let v = coeff.mul(s)?;
                    if v.is_zero() {
                        continue;
                    }
                    match next.entry(nk) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(v);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let sum = e.get().add(&v)?;
                            if sum.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = sum;
                            }
                        }
                    }
                }
            }
            terms = next;
        }
        // three componentwise multiplications
        for step in 0..3usize {
            let mut next: BTreeMap<Vec<u32>, crate::exactnum::Scalar> = BTreeMap::new();
            for (key, coeff) in &terms {
                let in_flat = key[step] as usize * d + key[step + 1] as usize;
                for (row, s) in mul.col(in_flat) {
                    let mut nk = Vec::with_capacity(key.len() - 1);
                    nk.extend_from_slice(&key[..step]);
                    nk.push(*row as u32);
                    nk.extend_from_slice(&key[step + 2..]);
                    let v = coeff.mul(s)?;
                    if v.is_zero() {
                        continue;
                    }
                    match next.entry(nk) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(v);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let sum = e.get().add(&v)?;
                            if sum.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = sum;
                            }
                        }
                    }
                }
            }
            terms = next;
        }
        let mut out: crate::linalg::SparseCol = Vec::with_capacity(terms.len());
        for (key, coeff) in terms {
            let idx = (key[0] as usize * d + key[1] as usize) * d + key[2] as usize;
            out.push((idx, coeff));
        }
        out.sort_by_key(|(r, _)| *r);
        cols.push(out);
    }
    Ok(LinearMap::from_cols(domain, codomain, cols))
}

/// A character: an algebra map delta: H -> I.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    host: HopfObject,
    map: LinearMap,
}

impl Character {
    pub fn new(host: &HopfObject, map: LinearMap) -> Result<Character> {
        let c = Character {
            host: host.clone(),
            map,
        };
        let report = c.verify()?;
        if let Some(item) = report.first_failure() {
            return Err(Error::VerificationFailed(format!(
                "character axiom '{}' fails",
                item.name
            )));
        }
        Ok(c)
    }

    /// For negative tests only.
    pub fn new_unchecked(host: &HopfObject, map: LinearMap) -> Character {
        Character {
            host: host.clone(),
            map,
        }
    }

    /// The counit as a character.
    pub fn counit(host: &HopfObject) -> Character {
        Character {
            host: host.clone(),
            map: host.counit.clone(),
        }
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn host(&self) -> &HopfObject {
        &self.host
    }

    pub fn verify(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        let h = &self.host;
        if *self.map.domain() != *h.space() || !self.map.codomain().is_unit() {
            return Err(Error::SpaceMismatch("character must map H -> I".into()));
        }
        // delta m = delta (x) delta
        let lhs = self.map.compose(&h.mul)?;
        let rhs = self.map.tensor(&self.map)?;
        push_equality(&mut report, "character_algebra_map", &lhs, &rhs);
        // delta eta = id_I
        let lhs = self.map.compose(&h.unit)?;
        let rhs = LinearMap::identity(&Space::unit(h.space().field()));
        push_equality(&mut report, "character_unit", &lhs, &rhs);
        // morphism of the category
        let ok = h
            .cat
            .is_morphism(&self.map, &h.carrier, &h.cat.unit_object())?;
        report.push_verdict("character_is_morphism", ok, None);
        Ok(report)
    }

    pub fn check_host(&self, host: &HopfObject) -> Result<()> {
        if self.host != *host {
            return Err(Error::HostMismatch(
                "character belongs to a different Hopf object".into(),
            ));
        }
        Ok(())
    }
}

/// A cocharacter: a coalgebra map sigma: I -> H.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocharacter {
    host: HopfObject,
    map: LinearMap,
}

impl Cocharacter {
    pub fn new(host: &HopfObject, map: LinearMap) -> Result<Cocharacter> {
        let c = Cocharacter {
            host: host.clone(),
            map,
        };
        let report = c.verify()?;
        if let Some(item) = report.first_failure() {
            return Err(Error::VerificationFailed(format!(
                "cocharacter axiom '{}' fails",
                item.name
            )));
        }
        Ok(c)
    }

    pub fn new_unchecked(host: &HopfObject, map: LinearMap) -> Cocharacter {
        Cocharacter {
            host: host.clone(),
            map,
        }
    }

    /// The unit as a cocharacter.
    pub fn unit(host: &HopfObject) -> Cocharacter {
        Cocharacter {
            host: host.clone(),
            map: host.unit.clone(),
        }
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn host(&self) -> &HopfObject {
        &self.host
    }

    pub fn verify(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        let h = &self.host;
        if !self.map.domain().is_unit() || *self.map.codomain() != *h.space() {
            return Err(Error::SpaceMismatch("cocharacter must map I -> H".into()));
        }
        // Delta sigma = sigma (x) sigma
        let lhs = h.comul.compose(&self.map)?;
        let rhs = self.map.tensor(&self.map)?;
        push_equality(&mut report, "cocharacter_coalgebra_map", &lhs, &rhs);
        // eps sigma = id_I
        let lhs = h.counit.compose(&self.map)?;
        let rhs = LinearMap::identity(&Space::unit(h.space().field()));
        push_equality(&mut report, "cocharacter_counit", &lhs, &rhs);
        let ok = h
            .cat
            .is_morphism(&self.map, &h.cat.unit_object(), &h.carrier)?;
        report.push_verdict("cocharacter_is_morphism", ok, None);
        Ok(report)
    }

    pub fn check_host(&self, host: &HopfObject) -> Result<()> {
        if self.host != *host {
            return Err(Error::HostMismatch(
                "cocharacter belongs to a different Hopf object".into(),
            ));
        }
        Ok(())
    }
}

/// A modular pair (delta, sigma) with delta sigma = id_I.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularPair {
    pub delta: Character,
    pub sigma: Cocharacter,
}

impl ModularPair {
    pub fn new(delta: Character, sigma: Cocharacter) -> Result<ModularPair> {
        let report = check_modular_pair(delta.host(), &delta, &sigma)?;
        if let Some(item) = report.first_failure() {
            return Err(Error::VerificationFailed(format!(
                "modular pair axiom '{}' fails",
                item.name
            )));
        }
        Ok(ModularPair { delta, sigma })
    }

    pub fn new_unchecked(delta: Character, sigma: Cocharacter) -> ModularPair {
        ModularPair { delta, sigma }
    }

    /// The canonical pair (counit, unit).
    pub fn counit_unit(host: &HopfObject) -> ModularPair {
        ModularPair {
            delta: Character::counit(host),
            sigma: Cocharacter::unit(host),
        }
    }

    pub fn host(&self) -> &HopfObject {
        self.delta.host()
    }
}

/// The delta-twisted antipode (delta (x) S) Delta: H -> H.
pub fn twisted_antipode(h: &HopfObject, delta: &Character) -> Result<LinearMap> {
    delta.check_host(h)?;
    delta.map().tensor(&h.antipode)?.compose(&h.comul)
}

/// Verdicts for delta, sigma and delta sigma = id_I.
pub fn check_modular_pair(
    h: &HopfObject,
    delta: &Character,
    sigma: &Cocharacter,
) -> Result<CheckReport> {
    delta.check_host(h)?;
    sigma.check_host(h)?;
    let mut report = CheckReport::new();
    report.merge(delta.verify()?);
    report.merge(sigma.verify()?);
    let lhs = delta.map().compose(sigma.map())?;
    let rhs = LinearMap::identity(&Space::unit(h.space().field()));
    push_equality(&mut report, "delta_sigma_is_identity", &lhs, &rhs);
    Ok(report)
}

/// The twisted-antipode identities, including the sigma-dependent ones when a
/// cocharacter is supplied, and the cancellation lemma
/// m(S^2 (x) S~) psi Delta = eta delta.
pub fn check_twisted_antipode(
    h: &HopfObject,
    delta: &Character,
    sigma: Option<&Cocharacter>,
) -> Result<CheckReport> {
    delta.check_host(h)?;
    if let Some(s) = sigma {
        s.check_host(h)?;
    }
    let mut report = CheckReport::new();
    let ws = twisted_antipode(h, delta)?;
    let m = &h.mul;
    let s = &h.antipode;
    let comul = &h.comul;
    let psi = h.braiding_hh()?;

    // S~ m = m psi (S~ (x) S~) = m (S~ (x) S~) psi
    let wsws = ws.tensor(&ws)?;
    let lhs = ws.compose(m)?;
    let mid = m.compose(&psi)?.compose(&wsws)?;
    let rhs = m.compose(&wsws)?.compose(&psi)?;
    push_both(&mut report, "twisted_antihom_mul", &lhs, &mid, &lhs, &rhs);

    // S~ eta = eta
    push_equality(&mut report, "twisted_unit", &ws.compose(&h.unit)?, &h.unit);

    // Delta S~ = psi (S~ (x) S) Delta = (S (x) S~) psi Delta
    let lhs = comul.compose(&ws)?;
    let mid = psi.compose(&ws.tensor(s)?)?.compose(comul)?;
    let rhs = s.tensor(&ws)?.compose(&psi)?.compose(comul)?;
    push_both(&mut report, "twisted_antihom_comul", &lhs, &mid, &lhs, &rhs);

    // eps S~ = delta
    push_equality(
        &mut report,
        "counit_twisted_is_delta",
        &h.counit.compose(&ws)?,
        delta.map(),
    );

    // delta S~ = eps
    push_equality(
        &mut report,
        "delta_twisted_is_counit",
        &delta.map().compose(&ws)?,
        &h.counit,
    );

    if let Some(sig) = sigma {
        // S~ sigma = S sigma
        let lhs = ws.compose(sig.map())?;
        let rhs = s.compose(sig.map())?;
        push_equality(&mut report, "twisted_on_cocharacter", &lhs, &rhs);
        // m(S~ sigma (x) sigma) = m(S sigma (x) sigma) = eta
        let l1 = m.compose(&ws.compose(sig.map())?.tensor(sig.map())?)?;
        let l2 = m.compose(&s.compose(sig.map())?.tensor(sig.map())?)?;
        push_both(&mut report, "antipode_cocharacter_inverse", &l1, &h.unit, &l2, &h.unit);
    }

    // m(S^2 (x) S~) psi Delta = eta delta
    let s2 = s.compose(s)?;
    let lhs = m
        .compose(&s2.tensor(&ws)?)?
        .compose(&psi)?
        .compose(comul)?;
    let rhs = h.unit.compose(delta.map())?;
    push_equality(&mut report, "square_twist_cancellation", &lhs, &rhs);

    Ok(report)
}

/// The braided modular-pair-in-involution condition
/// m((m (x) 1)(S sigma (x) S~^2 (x) sigma)) = id_H.
pub fn check_bmpi(h: &HopfObject, pair: &ModularPair) -> Result<CheckReport> {
    pair.delta.check_host(h)?;
    pair.sigma.check_host(h)?;
    let pre = check_modular_pair(h, &pair.delta, &pair.sigma)?;
    if !pre.all_passed() {
        return Err(Error::PreconditionFailed(format!(
            "modular pair axioms do not hold (first failure: {})",
            pre.first_failure().map(|i| i.name.as_str()).unwrap_or("?")
        )));
    }
    let mut report = CheckReport::new();
    let ws = twisted_antipode(h, &pair.delta)?;
    let ws2 = ws.compose(&ws)?;
    let s_sigma = h.antipode.compose(pair.sigma.map())?;
    // (S sigma (x) S~^2 (x) sigma): I (x) H (x) I = H -> H^3
    let triple = s_sigma.tensor(&ws2)?.tensor(pair.sigma.map())?;
    let composite = h
        .mul
        .compose(&h.mul.tensor(&h.id())?)?
        .compose(&triple)?;
    match composite.first_difference(&h.id()) {
        None => report.push_pass("bmpi_involution"),
        Some((j, l, r)) => report.push_verdict(
            "bmpi_involution",
            false,
            Some(crate::report::Witness {
                basis: composite.domain().label(j).to_string(),
                lhs: l,
                rhs: r,
            }),
        ),
    }
    report.note(format!(
        "involution composite matrix: {}",
        render_matrix(&composite)
    ));
    Ok(report)
}

/// Commutativity (m psi = m), cocommutativity (Delta = psi Delta), the value
/// of S^2, and the implication (either premise) => S^2 = id. The three facts
/// are informational; only the implication is a required verdict.
pub fn check_s_squared(h: &HopfObject) -> Result<CheckReport> {
    let axioms = verify_hopf(h)?;
    if !axioms.all_passed() {
        return Err(Error::PreconditionFailed("Hopf axioms do not hold".into()));
    }
    let mut report = CheckReport::new();
    let psi = h.braiding_hh()?;
    let commutative = h.mul.compose(&psi)? == h.mul;
    let cocommutative = psi.compose(&h.comul)? == h.comul;
    let s2 = h.antipode.compose(&h.antipode)?;
    let s2_is_id = s2.is_identity();
    report.push_info("commutative_braided", commutative, None);
    report.push_info("cocommutative_braided", cocommutative, None);
    report.push_info("antipode_squared_is_identity", s2_is_id, None);
    let implication = !(commutative || cocommutative) || s2_is_id;
    let witness = if implication {
        None
    } else {
        s2.first_difference(&h.id()).map(|(j, l, r)| crate::report::Witness {
            basis: s2.domain().label(j).to_string(),
            lhs: l,
            rhs: r,
        })
    };
    report.push_verdict("s_squared_implication", implication, witness);
    Ok(report)
}

fn render_matrix(map: &LinearMap) -> String {
    let mut parts = Vec::new();
    for (j, col) in map.cols().iter().enumerate() {
        for (r, s) in col {
            parts.push(format!("[{r},{j}]={s}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

/// Small hand-built Hopf objects shared by unit tests across modules.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::exactnum::Field;
    use crate::moncat::BraidedCategory;

    fn qq() -> Field {
        Field::rational()
    }

    /// Group algebra of Z_2 in the trivial category.
    pub(crate) fn cz2() -> HopfObject {
        let f = qq();
        let cat = BraidedCategory::trivial(f.clone());
        // "e" for the group identity: "1" is the reserved unit-object label
        let h = Space::new(f.clone(), vec!["e".into(), "g".into()]).unwrap();
        let carrier = cat.object(h.clone()).unwrap();
        let unit_space = Space::unit(&f);
        let one = f.one();
        let mut mul_triples = Vec::new();
        for i in 0..2usize {
            for j in 0..2usize {
                mul_triples.push((i ^ j, i * 2 + j, one.clone()));
            }
        }
        let mul = LinearMap::from_triples(h.tensor(&h), h.clone(), &mul_triples).unwrap();
        let unit = LinearMap::from_triples(unit_space.clone(), h.clone(), &[(0, 0, one.clone())])
            .unwrap();
        let comul_triples: Vec<_> = (0..2).map(|i| (i * 2 + i, i, one.clone())).collect();
        let comul = LinearMap::from_triples(h.clone(), h.tensor(&h), &comul_triples).unwrap();
        let counit_triples: Vec<_> = (0..2).map(|i| (0, i, one.clone())).collect();
        let counit = LinearMap::from_triples(h.clone(), unit_space, &counit_triples).unwrap();
        let antipode = LinearMap::identity(&h);
        HopfObject::verified(cat, carrier, mul, unit, comul, counit, antipode).unwrap()
    }

    /// Exterior algebra on one odd generator, in the Koszul category.
    pub(crate) fn ext1() -> HopfObject {
        let f = qq();
        let cat = BraidedCategory::koszul(f.clone());
        let h = Space::graded(
            f.clone(),
            vec!["e".into(), "t".into()],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        let carrier = cat.object(h.clone()).unwrap();
        let unit_space = Space::unit(&f);
        let one = f.one();
        // 1*1=1, 1*t=t, t*1=t, t*t=0
        let mul = LinearMap::from_triples(
            h.tensor(&h),
            h.clone(),
            &[
                (0, 0, one.clone()),
                (1, 1, one.clone()),
                (1, 2, one.clone()),
            ],
        )
        .unwrap();
        let unit =
            LinearMap::from_triples(unit_space.clone(), h.clone(), &[(0, 0, one.clone())]).unwrap();
        // Delta 1 = 1 (x) 1; Delta t = t (x) 1 + 1 (x) t
        let comul = LinearMap::from_triples(
            h.clone(),
            h.tensor(&h),
            &[
                (0, 0, one.clone()),
                (2, 1, one.clone()),
                (1, 1, one.clone()),
            ],
        )
        .unwrap();
        let counit =
            LinearMap::from_triples(h.clone(), unit_space, &[(0, 0, one.clone())]).unwrap();
        let antipode = LinearMap::from_triples(
            h.clone(),
            h.clone(),
            &[(0, 0, one.clone()), (1, 1, f.integer(-1))],
        )
        .unwrap();
        HopfObject::verified(cat, carrier, mul, unit, comul, counit, antipode).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{cz2, ext1};
    use super::*;
    use crate::exactnum::Field;

    fn qq() -> Field {
        Field::rational()
    }

    #[test]
    fn cz2_all_axioms_pass() {
        let h = cz2();
        let report = verify_hopf(&h).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.items.len(), 9);
    }

    #[test]
    fn ext1_all_axioms_pass() {
        let h = ext1();
        assert!(verify_hopf(&h).unwrap().all_passed());
        assert!(derived_identities(&h).unwrap().all_passed());
    }

    #[test]
    fn corrupted_antipode_fails_with_witness() {
        let h = cz2();
        // S(g) = e instead of g
        let bad_s = LinearMap::from_triples(
            h.space().clone(),
            h.space().clone(),
            &[(0, 0, qq().one()), (0, 1, qq().one())],
        )
        .unwrap();
        let bad = HopfObject::new_unchecked(
            h.cat().clone(),
            h.carrier().clone(),
            h.mul().clone(),
            h.unit().clone(),
            h.comul().clone(),
            h.counit().clone(),
            bad_s,
        );
        let report = verify_hopf(&bad).unwrap();
        assert!(!report.all_passed());
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "antipode");
        assert_eq!(fail.witness.as_ref().unwrap().basis, "g");
    }

    #[test]
    fn twisted_antipode_examples() {
        let h = cz2();
        // delta = eps gives S~ = S
        let eps = Character::counit(&h);
        let ws = twisted_antipode(&h, &eps).unwrap();
        assert_eq!(&ws, h.antipode());
        // delta(g) = -1 gives S~(g) = -g
        let f = qq();
        let delta_map = LinearMap::from_triples(
            h.space().clone(),
            Space::unit(&f),
            &[(0, 0, f.one()), (0, 1, f.integer(-1))],
        )
        .unwrap();
        let delta = Character::new(&h, delta_map).unwrap();
        let ws = twisted_antipode(&h, &delta).unwrap();
        assert_eq!(ws.entry(1, 1), f.integer(-1));
        // twisted antipode identity suite
        assert!(check_twisted_antipode(&h, &delta, None).unwrap().all_passed());
    }

    #[test]
    fn ext1_twisted_is_antipode() {
        let h = ext1();
        let eps = Character::counit(&h);
        let ws = twisted_antipode(&h, &eps).unwrap();
        assert_eq!(ws.entry(1, 1), qq().integer(-1));
    }

    #[test]
    fn modular_pair_checks() {
        let h = cz2();
        let pair = ModularPair::counit_unit(&h);
        assert!(check_modular_pair(&h, &pair.delta, &pair.sigma)
            .unwrap()
            .all_passed());
        // delta(g) = -1 with sigma = unit passes
        let f = qq();
        let delta_map = LinearMap::from_triples(
            h.space().clone(),
            Space::unit(&f),
            &[(0, 0, f.one()), (0, 1, f.integer(-1))],
        )
        .unwrap();
        let delta = Character::new(&h, delta_map).unwrap();
        let sigma = Cocharacter::unit(&h);
        assert!(check_modular_pair(&h, &delta, &sigma).unwrap().all_passed());
        // sigma(1) = g fails: delta sigma = -1
        let sigma_g =
            LinearMap::from_triples(Space::unit(&f), h.space().clone(), &[(1, 0, f.one())])
                .unwrap();
        let sigma_g = Cocharacter::new(&h, sigma_g).unwrap();
        let report = check_modular_pair(&h, &delta, &sigma_g).unwrap();
        assert!(!report.all_passed());
        assert_eq!(
            report.first_failure().unwrap().name,
            "delta_sigma_is_identity"
        );
    }

    #[test]
    fn bmpi_on_cz2_and_ext1() {
        for h in [cz2(), ext1()] {
            let pair = ModularPair::counit_unit(&h);
            assert!(check_bmpi(&h, &pair).unwrap().all_passed());
        }
        // (delta(g) = -1, unit) on cz2 passes: S~^2 = id
        let h = cz2();
        let f = qq();
        let delta_map = LinearMap::from_triples(
            h.space().clone(),
            Space::unit(&f),
            &[(0, 0, f.one()), (0, 1, f.integer(-1))],
        )
        .unwrap();
        let delta = Character::new(&h, delta_map).unwrap();
        let pair = ModularPair::new(delta, Cocharacter::unit(&h)).unwrap();
        assert!(check_bmpi(&h, &pair).unwrap().all_passed());
    }

    #[test]
    fn s_squared_facts() {
        let h = cz2();
        let report = check_s_squared(&h).unwrap();
        assert!(report.all_passed());
        assert!(report.item("commutative_braided").unwrap().passed);
        assert!(report.item("cocommutative_braided").unwrap().passed);
        assert!(report.item("antipode_squared_is_identity").unwrap().passed);
        let h = ext1();
        let report = check_s_squared(&h).unwrap();
        assert!(report.item("commutative_braided").unwrap().passed);
        assert!(report.all_passed());
    }

    #[test]
    fn mutation_sensitivity_cz2() {
        let h = cz2();
        for which in ALL_TENSORS {
            let t = h.tensor_named(which);
            for (j, col) in t.cols().to_vec().iter().enumerate() {
                for (r, _) in col {
                    let mutated = h.with_mutated_tensor(which, *r, j);
                    let report = verify_hopf(&mutated).unwrap();
                    assert!(
                        !report.all_passed(),
                        "mutating {which:?}[{r},{j}] left all axioms green"
                    );
                }
            }
        }
    }
}
