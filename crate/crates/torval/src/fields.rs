//! Ingestion and validation of number-field and extension invariant records.
//!
//! Fields are modeled inside one ambient cyclotomic field Q(zeta_m): the
//! torsion generator and fundamental units are coefficient vectors there, so
//! Galois actions stay exact. Class numbers, torsion orders and ramification
//! are trusted inputs, but everything that can be cross-checked internally
//! is: generator orders, unit norms, the declared regulator against the one
//! recomputed from the units, the sigma action against actual Galois images.
//! A failed load reports every violated invariant, not just the first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

use crate::abelian::{FgGroup, GroupMap};
use crate::cyclo::{units_mod, CycloElement};
use crate::error::{Error, Result};
use crate::mat::IntegerMatrix;
use crate::tate::CyclicModule;

pub const REGULATOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Serialize, Deserialize)]
struct FieldFile {
    label: String,
    conductor: u32,
    r2: u32,
    class_number: u64,
    torsion_order: u32,
    torsion_generator: Vec<String>,
    fundamental_units: Vec<Vec<String>>,
    regulator: f64,
}

/// A validated number-field record: a totally imaginary field of degree
/// `2 * r2` presented inside the ambient cyclotomic field of the given
/// conductor.
#[derive(Clone, Debug)]
pub struct FieldData {
    pub label: String,
    pub conductor: u32,
    pub degree: u32,
    pub r2: u32,
    pub class_number: u64,
    pub roots_of_unity_count: u32,
    pub torsion_generator: CycloElement,
    pub fundamental_units: Vec<CycloElement>,
    /// Declared regulator; informational, always recomputed from the units.
    pub regulator: f64,
    places: Vec<u32>,
}

impl FieldData {
    /// Representatives (units mod the conductor) of the complex places of the
    /// field, one per conjugate pair, derived exactly from how ambient Galois
    /// elements act on the field's generators.
    pub fn place_representatives(&self) -> &[u32] {
        &self.places
    }

    /// Realize an exponent vector on (torsion generator, units...) as an
    /// explicit element.
    pub fn realize_unit(&self, exponents: &[BigInt]) -> Result<CycloElement> {
        if exponents.len() != 1 + self.fundamental_units.len() {
            return Err(Error::validation("exponent vector length mismatch"));
        }
        let mut out = self.torsion_generator.power(big_to_i64(&exponents[0])?)?;
        for (u, e) in self.fundamental_units.iter().zip(&exponents[1..]) {
            out = out.multiply(&u.power(big_to_i64(e)?)?)?;
        }
        Ok(out)
    }

    /// The unit group as an abstract lattice Z/w + Z^(r2 - 1), generators in
    /// the declared order.
    pub fn unit_lattice(&self) -> FgGroup {
        let mut labels = vec!["torsion".to_string()];
        for i in 0..self.fundamental_units.len() {
            labels.push(format!("u{}", i + 1));
        }
        FgGroup::from_factors(
            &[u64::from(self.roots_of_unity_count)],
            self.fundamental_units.len(),
        )
        .with_labels(labels)
    }
}

fn big_to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x.clone()).map_err(|_| Error::Check("exponent out of i64 range".into()))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

fn parse_element(
    m: u32,
    coeffs: &[String],
    what: &str,
    errors: &mut Vec<String>,
) -> Option<CycloElement> {
    let mut parsed = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        match parse_rational(c) {
            Ok(q) => parsed.push(q),
            Err(e) => {
                errors.push(format!("{what}: {e}"));
                return None;
            }
        }
    }
    match CycloElement::from_coeffs(m, parsed) {
        Ok(e) => Some(e),
        Err(e) => {
            errors.push(format!("{what}: {e}"));
            None
        }
    }
}

pub fn load_field_str(text: &str) -> Result<FieldData> {
    let file: FieldFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    field_from_file(file)
}

pub fn load_field(path: &Path) -> Result<FieldData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    load_field_str(&text)
}

fn field_from_file(file: FieldFile) -> Result<FieldData> {
    let mut errors: Vec<String> = Vec::new();
    let m = file.conductor;
    if m < 1 {
        return Err(Error::validation("conductor must be at least 1"));
    }
    if file.r2 < 1 {
        errors.push("r2 must be at least 1 for a totally imaginary field".into());
    }
    if file.torsion_order < 1 {
        errors.push("torsion_order must be positive".into());
    }
    if file.class_number < 1 {
        errors.push("class_number must be positive".into());
    }

    let torsion_generator =
        parse_element(m, &file.torsion_generator, "torsion_generator", &mut errors);
    let mut units = Vec::new();
    for (i, u) in file.fundamental_units.iter().enumerate() {
        if let Some(e) = parse_element(m, u, &format!("fundamental_units[{i}]"), &mut errors) {
            units.push(e);
        }
    }
    if !errors.is_empty() {
        return Err(Error::Validation(errors));
    }
    let torsion_generator = torsion_generator.expect("parsed without errors");

    if !torsion_generator.has_exact_order(file.torsion_order) {
        errors.push(format!(
            "torsion generator does not have exact order {}",
            file.torsion_order
        ));
    }
    if units.len() as u32 != file.r2 - 1 {
        errors.push(format!(
            "expected r2 - 1 = {} fundamental units, found {}",
            file.r2 - 1,
            units.len()
        ));
    }
    for (i, u) in units.iter().enumerate() {
        if u.is_zero() {
            errors.push(format!("fundamental unit {i} is zero"));
            continue;
        }
        match u.absolute_norm() {
            Ok(n) => {
                if n.abs() != BigRational::one() {
                    errors.push(format!(
                        "fundamental unit {i} has absolute norm {n}, not a unit"
                    ));
                }
            }
            Err(e) => errors.push(format!("fundamental unit {i}: {e}")),
        }
    }

    let mut generators = vec![torsion_generator.clone()];
    generators.extend(units.iter().cloned());
    let places = match derive_places(m, &generators) {
        Ok(p) => p,
        Err(e) => {
            errors.push(e.to_string());
            vec![]
        }
    };
    if !places.is_empty() && places.len() as u32 != file.r2 {
        errors.push(format!(
            "generators span {} complex places, but r2 = {}",
            places.len(),
            file.r2
        ));
    }

    let data = FieldData {
        label: file.label,
        conductor: m,
        degree: 2 * file.r2,
        r2: file.r2,
        class_number: file.class_number,
        roots_of_unity_count: file.torsion_order,
        torsion_generator,
        fundamental_units: units,
        regulator: file.regulator,
        places,
    };

    if errors.is_empty() {
        match regulator_of_field(&data) {
            Ok(r) => {
                if (r - data.regulator).abs() > REGULATOR_TOLERANCE {
                    errors.push(format!(
                        "declared regulator {} disagrees with the recomputed value {r}",
                        data.regulator
                    ));
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }

    if errors.is_empty() {
        Ok(data)
    } else {
        Err(Error::Validation(errors))
    }
}

/// Group the ambient embeddings `zeta -> zeta^k` by their restriction to the
/// field generated by `generators`, identifying conjugate embeddings. The
/// classes are the complex places; the smallest k represents each class.
fn derive_places(m: u32, generators: &[CycloElement]) -> Result<Vec<u32>> {
    let units = units_mod(m);
    let images = |k: u32| -> Result<Vec<CycloElement>> {
        generators.iter().map(|g| g.galois_apply(k)).collect()
    };
    let mut reps: Vec<(u32, Vec<CycloElement>, Vec<CycloElement>)> = Vec::new();
    'outer: for &k in &units {
        let img = images(k)?;
        for (_, rep_img, rep_conj) in &reps {
            if &img == rep_img || &img == rep_conj {
                continue 'outer;
            }
        }
        let conj = images((m - k) % m)?;
        reps.push((k, img, conj));
    }
    Ok(reps.into_iter().map(|(k, _, _)| k).collect())
}

/// The regulator recomputed from the fundamental units: |det| of the
/// (r2 - 1) x (r2 - 1) matrix of normalized log absolute values at all but
/// one complex place. The empty determinant is 1.
pub fn regulator_of_field(f: &FieldData) -> Result<f64> {
    let r = f.fundamental_units.len();
    if r == 0 {
        return Ok(1.0);
    }
    if f.places.len() < r + 1 {
        return Err(Error::Check(format!(
            "field has {} places but needs {} for the regulator",
            f.places.len(),
            r + 1
        )));
    }
    let mut m = vec![vec![0.0; r]; r];
    for (i, &place) in f.places.iter().take(r).enumerate() {
        for (j, u) in f.fundamental_units.iter().enumerate() {
            m[i][j] = u.log_abs_at_place(place)?;
        }
    }
    let d = det_f64(m).abs();
    if d < 1e-12 {
        return Err(Error::Check(
            "regulator matrix is singular; the declared units are not independent".into(),
        ));
    }
    Ok(d)
}

pub(crate) fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| m[i][c].abs() > 1e-300) else {
            return 0.0;
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                m[i][j] -= f * m[c][j];
            }
        }
    }
    det
}

#[derive(Debug, Serialize, Deserialize)]
struct RamifiedEntry {
    place: String,
    e: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct ExtensionFile {
    base: String,
    top: String,
    galois_order: u32,
    sigma: u32,
    unit_action: Vec<Vec<i64>>,
    // required: an unramified extension says so with an empty list
    ramified: Vec<RamifiedEntry>,
    l0_index: u32,
}

/// A validated cyclic extension L/K of totally imaginary fields in a common
/// ambient cyclotomic model, together with its Galois action on the unit
/// group of L and the ramification data.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub base: FieldData,
    pub top: FieldData,
    pub galois_order: u32,
    /// Unit mod the conductor generating Gal(L/K) inside the ambient group.
    pub sigma: u32,
    /// Exponent matrix of sigma on the declared generators of O_L^*.
    pub unit_action: IntegerMatrix,
    pub ramified: Vec<(String, u32)>,
    pub l0_index: u32,
    base_ref: String,
    top_ref: String,
}

pub fn load_extension(path: &Path) -> Result<ExtensionData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    load_extension_str(&text, |name| {
        std::fs::read_to_string(dir.join(name))
            .map_err(|e| Error::Parse(format!("{}: {e}", dir.join(name).display())))
    })
}

/// Load an extension record, resolving the base and top field references
/// through the given lookup (a directory read for real files, a table lookup
/// for the built-in data).
pub fn load_extension_str(
    text: &str,
    resolve: impl Fn(&str) -> Result<String>,
) -> Result<ExtensionData> {
    let file: ExtensionFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let base = load_field_str(&resolve(&file.base)?)?;
    let top = load_field_str(&resolve(&file.top)?)?;
    extension_from_parts(file, base, top)
}

fn extension_from_parts(
    file: ExtensionFile,
    base: FieldData,
    top: FieldData,
) -> Result<ExtensionData> {
    let mut errors: Vec<String> = Vec::new();
    let m = top.conductor;
    let n = file.galois_order;
    if base.conductor != m {
        errors.push(format!(
            "base conductor {} and top conductor {m} must agree",
            base.conductor
        ));
        return Err(Error::Validation(errors));
    }
    if n < 1 {
        errors.push("galois_order must be at least 1".into());
        return Err(Error::Validation(errors));
    }
    if crate::cyclo::units_mod(m)
        .iter()
        .all(|&u| u != file.sigma % m)
    {
        errors.push(format!("sigma = {} is not a unit modulo {m}", file.sigma));
        return Err(Error::Validation(errors));
    }
    if top.degree != base.degree * n {
        errors.push(format!(
            "degree mismatch: [L:Q] = {} but [K:Q] * n = {}",
            top.degree,
            base.degree * n
        ));
    }

    // sigma fixes the base field pointwise
    let mut base_gens = vec![base.torsion_generator.clone()];
    base_gens.extend(base.fundamental_units.iter().cloned());
    for (i, g) in base_gens.iter().enumerate() {
        match g.galois_apply(file.sigma) {
            Ok(img) => {
                if &img != g {
                    errors.push(format!("sigma does not fix base generator {i}"));
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }

    // sigma has exact order n on the top field's generators
    let mut top_gens = vec![top.torsion_generator.clone()];
    top_gens.extend(top.fundamental_units.iter().cloned());
    match galois_order_on(&top_gens, file.sigma, m) {
        Ok(ord) => {
            if ord != n {
                errors.push(format!(
                    "sigma has order {ord} on the top field, but galois_order = {n}"
                ));
            }
        }
        Err(e) => errors.push(e.to_string()),
    }

    // the exponent matrix must be the matrix of sigma on the generators
    let gens = 1 + top.fundamental_units.len();
    let action = int_matrix_from_rows(&file.unit_action);
    if action.rows() != gens || action.cols() != gens {
        errors.push(format!(
            "unit_action must be {gens}x{gens} on (torsion generator, units)"
        ));
        return Err(Error::Validation(errors));
    }
    for j in 0..gens {
        let claimed = match top.realize_unit(&action.column(j)) {
            Ok(x) => x,
            Err(e) => {
                errors.push(format!("unit_action column {j}: {e}"));
                continue;
            }
        };
        match top_gens[j].galois_apply(file.sigma) {
            Ok(actual) => {
                if claimed != actual {
                    errors.push(format!(
                        "unit_action column {j} disagrees with the Galois image of generator {j}"
                    ));
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }

    // the action must define an order-n automorphism of Z/w + Z^(r2-1)
    let lattice = top.unit_lattice();
    match GroupMap::new(lattice.clone(), lattice.clone(), action.clone()) {
        Ok(map) => {
            if let Err(e) = CyclicModule::new(lattice, map, n) {
                errors.push(e.to_string());
            }
        }
        Err(e) => errors.push(format!("unit_action: {e}")),
    }

    for (label, e) in file.ramified.iter().map(|r| (&r.place, r.e)) {
        if e < 2 {
            errors.push(format!(
                "ramified place {label}: index {e} must be at least 2"
            ));
        } else if !n.is_multiple_of(e) {
            errors.push(format!(
                "ramified place {label}: index {e} does not divide the degree {n}"
            ));
        }
    }
    if file.l0_index != n {
        errors.push(format!(
            "l0_index = {} but a cyclic extension of degree {n} is its own maximal \
             abelian subextension",
            file.l0_index
        ));
    }

    if !errors.is_empty() {
        return Err(Error::Validation(errors));
    }
    Ok(ExtensionData {
        base,
        top,
        galois_order: n,
        sigma: file.sigma % m,
        unit_action: action,
        ramified: file.ramified.into_iter().map(|r| (r.place, r.e)).collect(),
        l0_index: file.l0_index,
        base_ref: file.base,
        top_ref: file.top,
    })
}

fn galois_order_on(gens: &[CycloElement], sigma: u32, m: u32) -> Result<u32> {
    let mut k = sigma % m;
    for ord in 1..=m {
        if gens
            .iter()
            .map(|g| Ok(g.galois_apply(k)? == *g))
            .collect::<Result<Vec<bool>>>()?
            .iter()
            .all(|&b| b)
        {
            return Ok(ord);
        }
        k = ((u64::from(k) * u64::from(sigma)) % u64::from(m)) as u32;
    }
    Err(Error::validation("sigma does not act with finite order"))
}

fn int_matrix_from_rows(rows: &[Vec<i64>]) -> IntegerMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut m = IntegerMatrix::zero(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate().take(c) {
            m[(i, j)] = BigInt::from(x);
        }
    }
    m
}

impl ExtensionData {
    /// The unit group of the top field with its sigma action, as a cyclic
    /// module on the exponent lattice.
    pub fn unit_module(&self) -> Result<CyclicModule> {
        let lattice = self.top.unit_lattice();
        let map = GroupMap::new(lattice.clone(), lattice.clone(), self.unit_action.clone())?;
        CyclicModule::new(lattice, map, self.galois_order)
    }

    /// The roots of unity of the top field with the restricted sigma action.
    pub fn mu_module(&self) -> Result<CyclicModule> {
        let mu = FgGroup::from_factors(&[u64::from(self.top.roots_of_unity_count)], 0);
        let matrix = self.unit_action.select(&[0], &[0]);
        let map = GroupMap::new(mu.clone(), mu.clone(), matrix)?;
        CyclicModule::new(mu, map, self.galois_order)
    }

    pub fn ramification_product(&self) -> BigInt {
        self.ramified
            .iter()
            .fold(BigInt::one(), |acc, (_, e)| acc * BigInt::from(*e))
    }
}

/// Canonical text form of a field record; `load(serialize(load(x)))` is
/// identical to `load(x)`.
pub fn serialize_field(f: &FieldData) -> String {
    let file = FieldFile {
        label: f.label.clone(),
        conductor: f.conductor,
        r2: f.r2,
        class_number: f.class_number,
        torsion_order: f.roots_of_unity_count,
        torsion_generator: f
            .torsion_generator
            .coeffs()
            .iter()
            .map(ToString::to_string)
            .collect(),
        fundamental_units: f
            .fundamental_units
            .iter()
            .map(|u| u.coeffs().iter().map(ToString::to_string).collect())
            .collect(),
        regulator: f.regulator,
    };
    toml::to_string(&file).expect("field record serializes")
}

pub fn serialize_extension(e: &ExtensionData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "base = {:?}", e.base_ref);
    let _ = writeln!(out, "top = {:?}", e.top_ref);
    let _ = writeln!(out, "galois_order = {}", e.galois_order);
    let _ = writeln!(out, "sigma = {}", e.sigma);
    let rows: Vec<String> = (0..e.unit_action.rows())
        .map(|i| {
            let cells: Vec<String> = (0..e.unit_action.cols())
                .map(|j| e.unit_action[(i, j)].to_string())
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    let _ = writeln!(out, "unit_action = [{}]", rows.join(", "));
    let _ = writeln!(out, "l0_index = {}", e.l0_index);
    if e.ramified.is_empty() {
        let _ = writeln!(out, "ramified = []");
    }
    for (place, ev) in &e.ramified {
        let _ = writeln!(out, "\n[[ramified]]\nplace = {place:?}\ne = {ev}");
    }
    out
}

/// The data files shipped with the crate: Q(i) and Q(zeta_12) in the
/// conductor-12 model, and the quadratic extension between them.
pub mod builtin {
    use super::*;

    pub const QI_FIELD: &str = include_str!("../data/qi.field");
    pub const QZETA12_FIELD: &str = include_str!("../data/qzeta12.field");
    pub const EXTENSION: &str = include_str!("../data/qzeta12-over-qi.ext");

    pub fn gaussian_field() -> Result<FieldData> {
        load_field_str(QI_FIELD)
    }

    pub fn cyclotomic12_field() -> Result<FieldData> {
        load_field_str(QZETA12_FIELD)
    }

    pub fn example_extension() -> Result<ExtensionData> {
        load_extension_str(EXTENSION, |name| match name {
            "qi.field" => Ok(QI_FIELD.to_string()),
            "qzeta12.field" => Ok(QZETA12_FIELD.to_string()),
            other => Err(Error::Parse(format!("unknown builtin field {other:?}"))),
        })
    }
}
