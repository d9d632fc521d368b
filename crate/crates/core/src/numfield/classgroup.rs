//! Form class groups of fundamental discriminants.
//!
//! Imaginary fields use reduced positive definite forms. Real fields use
//! cycles of reduced indefinite forms under `rho`, which gives the narrow
//! class group; the wide (ideal) class group is its quotient by the class
//! of `(-1, δ, (D - δ)/4)`, which is trivial exactly when the fundamental
//! unit has norm -1.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::forms::{reduced_definite_forms, reduced_indefinite_forms, BinaryQuadraticForm};
use super::units::{fundamental_unit, FundamentalUnit};
use super::{FieldError, QuadraticField};
use crate::cpmod::CpModule;
use crate::intlinalg::{cokernel, FgAbGroup, IntMatrix};

/// The proper (narrow) equivalence classes of primitive forms of one
/// discriminant, with an explicit presentation `Z^k / relations`.
#[derive(Clone, Debug)]
pub struct FormClassGroup {
    disc: i128,
    reps: Vec<BinaryQuadraticForm>,
    index: HashMap<BinaryQuadraticForm, usize>,
    identity: usize,
    generators: Vec<usize>,
    relations: IntMatrix,
    coords: Vec<Vec<i64>>,
}

impl FormClassGroup {
    pub fn new(disc: i128) -> Self {
        let (reps, index) = if disc < 0 {
            let reps = reduced_definite_forms(disc);
            let index = reps.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            (reps, index)
        } else {
            cycles(disc)
        };
        let identity = index[&BinaryQuadraticForm::principal(disc).reduce()];
        let mut group = Self {
            disc,
            reps,
            index,
            identity,
            generators: Vec::new(),
            relations: IntMatrix::zeros(0, 0),
            coords: Vec::new(),
        };
        group.extract_structure();
        group
    }

    pub fn discriminant(&self) -> i128 {
        self.disc
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn representatives(&self) -> &[BinaryQuadraticForm] {
        &self.reps
    }

    pub fn class_of(&self, f: &BinaryQuadraticForm) -> usize {
        self.index[&f.reduce()]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.class_of(&self.reps[i].compose(&self.reps[j]))
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.class_of(&self.reps[i].inverse())
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Relation lattice on the generators, as columns.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Exponent vector of class `i` in the chosen generators.
    pub fn coords(&self, i: usize) -> &[i64] {
        &self.coords[i]
    }

    pub fn abstract_group(&self) -> FgAbGroup {
        cokernel(&self.relations)
    }

    /// Multiplication table; row `i`, column `j` holds `i · j`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Generators are added one at a time: each new element `g` outside the
    /// subgroup `H` found so far contributes the relation `k·g = v`, where
    /// `k` is the order of `g` modulo `H` and `v` the coordinates of `g^k`.
    fn extract_structure(&mut self) {
        let h = self.order();
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; h];
        coords[self.identity] = Some(Vec::new());
        let mut members = vec![self.identity];
        let mut columns: Vec<Vec<i64>> = Vec::new();
        let mut generators = Vec::new();

        for g in 0..h {
            if coords[g].is_some() {
                continue;
            }
            let j = generators.len();
            let mut k = 1i64;
            let mut x = g;
            while coords[x].is_none() {
                x = self.mul(x, g);
                k += 1;
            }
            let mut rel = coords[x].clone().unwrap();
            rel.iter_mut().for_each(|e| *e = -*e);
            rel.resize(j, 0);
            rel.push(k);
            columns.push(rel);

            let mut added = Vec::new();
            for &y in &members {
                let base = coords[y].clone().unwrap();
                let mut z = y;
                for i in 1..k {
                    z = self.mul(z, g);
                    let mut v = base.clone();
                    v.resize(j, 0);
                    v.push(i);
                    coords[z] = Some(v);
                    added.push(z);
                }
            }
            members.extend(added);
            generators.push(g);
        }

        let n = generators.len();
        self.coords = coords
            .into_iter()
            .map(|c| {
                let mut v = c.expect("every class is reached");
                v.resize(n, 0);
                v
            })
            .collect();
        let cols: Vec<Vec<BigInt>> = columns
            .into_iter()
            .map(|mut c| {
                c.resize(n, 0);
                c.into_iter().map(BigInt::from).collect()
            })
            .collect();
        self.relations = IntMatrix::from_columns(n, &cols).expect("square relation matrix");
        self.generators = generators;
    }
}

/// Reduced indefinite forms grouped into `rho`-cycles. Each cycle is one
/// proper equivalence class, represented by its smallest form.
fn cycles(
    disc: i128,
) -> (
    Vec<BinaryQuadraticForm>,
    HashMap<BinaryQuadraticForm, usize>,
) {
    let forms = reduced_indefinite_forms(disc);
    let mut index = HashMap::with_capacity(forms.len());
    let mut reps = Vec::new();
    for f in forms {
        if index.contains_key(&f) {
            continue;
        }
        let id = reps.len();
        let mut cycle_min = f;
        let mut g = f;
        loop {
            index.insert(g, id);
            cycle_min = cycle_min.min(g);
            g = g.rho();
            if g == f {
                break;
            }
        }
        reps.push(cycle_min);
    }
    (reps, index)
}

/// Everything computed about `Cl(Q(√d))` in one pass.
#[derive(Clone, Debug)]
pub struct ClassGroupData {
    pub field: QuadraticField,
    pub narrow: FormClassGroup,
    /// Class of the form `(-1, δ, (D - δ)/4)`; its image generates the
    /// kernel of the narrow-to-wide map.
    pub sign_class: usize,
    pub unit: Option<FundamentalUnit>,
    /// Wide class group with the Galois involution `I ↦ I⁻¹`.
    pub module: CpModule,
}

impl ClassGroupData {
    pub fn narrow_group(&self) -> FgAbGroup {
        self.narrow.abstract_group()
    }

    pub fn wide_group(&self) -> &FgAbGroup {
        self.module.group()
    }

    pub fn class_number(&self) -> u64 {
        self.wide_group().invariants_u64().iter().product()
    }
}

pub fn class_group_data(d: i64) -> Result<ClassGroupData, FieldError> {
    let field = QuadraticField::new(d)?;
    let disc = field.discriminant() as i128;
    let narrow = FormClassGroup::new(disc);
    let (sign_class, unit) = if field.is_real() {
        let delta = disc.rem_euclid(2);
        let j = BinaryQuadraticForm::from_ab(-1, delta, disc);
        (narrow.class_of(&j), Some(fundamental_unit(d)?))
    } else {
        (narrow.identity(), None)
    };

    let k = narrow.generators().len();
    let mut relations = narrow.relations().clone();
    if unit.as_ref().is_some_and(|u| u.norm == 1) {
        let j: Vec<BigInt> = narrow
            .coords(sign_class)
            .iter()
            .map(|&e| e.into())
            .collect();
        relations = relations.hstack(&IntMatrix::from_columns(k, &[j])?)?;
    }
    let tau = IntMatrix::scalar(k, -1);
    let module = CpModule::new(2, relations, tau)?;
    Ok(ClassGroupData {
        field,
        narrow,
        sign_class,
        unit,
        module,
    })
}

/// `Cl(Q(√d))` as a C_2-module under the Galois involution.
pub fn class_group(d: i64) -> Result<CpModule, FieldError> {
    Ok(class_group_data(d)?.module)
}
