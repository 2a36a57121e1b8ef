//! Constructors for the example families, each bundled with the properties
//! it is expected to have.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Backend, Field, Rational};
use crate::frames::{self, Frame};
use crate::linalg::Vector;
use crate::poly::{self, Interval};
use crate::report::Certainty;
use crate::subspaces::{self, arrangement_from_perps, edidin_numeric_falsify, z_random_probe, Arrangement, Subspace};

/// Restarts and seed used for the three-dimensional subspace example.
pub const R3_FALSIFIER_RESTARTS: usize = 200;
/// Restarts and seed used for the six hyperplanes in `R⁴`.
pub const R4_FALSIFIER_RESTARTS: usize = 500;
pub const R4_ZPROBE_TRIALS: usize = 1000;
pub const EXAMPLE_SEED: u64 = 7;

/// Number of replacement values tried per slot before giving up.
const MAX_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum ExampleObject {
    Frame(Frame<Rational>),
    FloatFrame(Frame<f64>),
    Arrangement(Arrangement<Rational>),
}

impl ExampleObject {
    pub fn backend(&self) -> Backend {
        match self {
            ExampleObject::FloatFrame(_) => Backend::Float,
            _ => Backend::Exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Property {
    FullSpark,
    PhaseRetrieval,
    /// Every vector satisfies `a_d · Σ_{i<d} a_i = Σ_{i<d} a_i²`.
    SetAIdentity,
    /// The hyperplanes `φ_i^⊥` project `x` to a deficient family.
    PerpsDeficientAt(Vec<i64>),
    /// `(I − P_i)(1, …, 1)` has last coordinate zero for every `i`.
    ResidualsInLastHyperplane,
    SubspaceDim(usize),
    /// The normals of the hyperplane members fail the complement property
    /// with exactly this (0-based) witness.
    NormalsFailCp(Vec<usize>),
    FalsifierNoWitness {
        restarts: usize,
        seed: u64,
    },
    ZProbeNoMember {
        trials: usize,
        seed: u64,
    },
    F0NoRealRoots,
}

impl Property {
    fn exact_method(&self) -> bool {
        !matches!(
            self,
            Property::FalsifierNoWitness { .. } | Property::ZProbeNoMember { .. }
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[String]| v.join(",");
        match self {
            Property::FullSpark => f.write_str("full_spark"),
            Property::PhaseRetrieval => f.write_str("does_phase_retrieval"),
            Property::SetAIdentity => f.write_str("set_a_identity"),
            Property::PerpsDeficientAt(x) => {
                let s: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                write!(f, "perps_deficient_at({})", join(&s))
            }
            Property::ResidualsInLastHyperplane => f.write_str("residuals_in_last_hyperplane"),
            Property::SubspaceDim(k) => write!(f, "subspace_dim={k}"),
            Property::NormalsFailCp(w) => {
                let s: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "normals_fail_cp_with_witness{{{}}}", join(&s))
            }
            Property::FalsifierNoWitness { restarts, seed } => {
                write!(f, "falsifier_no_witness(restarts={restarts},seed={seed})")
            }
            Property::ZProbeNoMember { trials, seed } => {
                write!(f, "zprobe_no_member(trials={trials},seed={seed})")
            }
            Property::F0NoRealRoots => f.write_str("f0_no_real_roots"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub property: Property,
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
    pub certainty: Certainty,
    pub detail: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleBundle {
    pub name: String,
    pub object: ExampleObject,
    pub expectations: Vec<Expectation>,
    /// Final sample points of the `R^d` family, after any replacements.
    pub xs: Option<Vec<Rational>>,
}

impl ExampleBundle {
    pub fn backend(&self) -> Backend {
        self.object.backend()
    }

    pub fn evaluate(&self) -> Result<Vec<Outcome>> {
        self.expectations.iter().map(|e| self.evaluate_one(e)).collect()
    }

    /// Evaluates everything except the randomized searches.
    pub fn evaluate_exact(&self) -> Result<Vec<Outcome>> {
        self.expectations
            .iter()
            .filter(|e| e.property.exact_method())
            .map(|e| self.evaluate_one(e))
            .collect()
    }

    pub fn evaluate_one(&self, e: &Expectation) -> Result<Outcome> {
        let (observed, detail) = match &self.object {
            ExampleObject::Frame(f) => eval_frame(f, &e.property)?,
            ExampleObject::FloatFrame(f) => eval_frame(f, &e.property)?,
            ExampleObject::Arrangement(a) => eval_arrangement(a, &e.property)?,
        };
        Ok(Outcome {
            name: e.property.to_string(),
            expected: e.expected,
            observed,
            certainty: Certainty::for_backend(self.backend(), e.property.exact_method()),
            detail,
        })
    }
}

fn unsupported(p: &Property, what: &str) -> Error {
    Error::InvalidInput(format!("property {p} does not apply to {what}"))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn ones<T: Field>(d: usize) -> Vector<T> {
    Vector::new(vec![T::one(); d])
}

fn eval_frame<T: Field>(frame: &Frame<T>, p: &Property) -> Result<(bool, String)> {
    let d = frame.dim();
    let tol = T::default_tol();
    Ok(match p {
        Property::FullSpark => {
            let r = frames::full_spark(frame)?;
            (r.full_spark, format!("dependent subset: {:?}", r.dependent))
        }
        Property::PhaseRetrieval => {
            let r = frames::does_phase_retrieval(frame)?;
            (r.holds, format!("witness: {:?}", r.witness))
        }
        Property::SetAIdentity => {
            let bad = frame.vectors().iter().position(|v| {
                let head = &v.entries()[..d - 1];
                let sum = head.iter().fold(T::zero(), |a, b| a + b.clone());
                let sq = head.iter().fold(T::zero(), |a, b| a + b.clone() * b.clone());
                !(v[d - 1].clone() * sum - sq).is_negligible(tol)
            });
            (bad.is_none(), format!("first violation: {bad:?}"))
        }
        Property::PerpsDeficientAt(x) => {
            let x = Vector::new(x.iter().map(|&v| T::from_i64(v)).collect());
            let w = subspaces::edidin_verify_witness(&arrangement_from_perps(frame)?, &x)?;
            (w.deficient(), format!("rank {} of {d}", w.rank))
        }
        Property::ResidualsInLastHyperplane => {
            let m = arrangement_from_perps(frame)?.projected(&ones(d))?;
            let bad = (0..m.rows()).position(|i| !m.get(i, d - 1).is_negligible(tol));
            (bad.is_none(), format!("first nonzero last coordinate: {bad:?}"))
        }
        Property::F0NoRealRoots => f0_no_real_roots()?,
        other => return Err(unsupported(other, "a frame")),
    })
}

fn eval_arrangement<T: Field>(arr: &Arrangement<T>, p: &Property) -> Result<(bool, String)> {
    Ok(match p {
        Property::SubspaceDim(k) => {
            let bad = arr.subspaces().iter().position(|w| w.subspace_dim() != *k);
            (bad.is_none(), format!("first mismatch: {bad:?}"))
        }
        Property::NormalsFailCp(expected) => {
            let frame = Frame::new(arr.dim(), arr.normals()?)?;
            let r = frames::complement_property(&frame)?;
            let ok = !r.holds && r.witness.as_ref() == Some(expected);
            (ok, format!("witness: {:?}", r.witness))
        }
        Property::FalsifierNoWitness { restarts, seed } => {
            let r = edidin_numeric_falsify(arr, *restarts, *seed);
            (r.witness.is_none(), format!("min sigma {:e}", r.min_sigma))
        }
        Property::ZProbeNoMember { trials, seed } => {
            let r = z_random_probe(arr, *trials, *seed);
            (
                r.exact_members == 0,
                format!("min residual {:e}, near members {}", r.min_residual, r.near_members),
            )
        }
        Property::F0NoRealRoots => f0_no_real_roots()?,
        other => return Err(unsupported(other, "an arrangement")),
    })
}

fn f0_no_real_roots() -> Result<(bool, String)> {
    let f = poly::f0_dataset();
    let a = poly::count_real_roots(&f.specialize_x34_one(), &Interval::Real)?;
    let b = poly::count_real_roots(&f.specialize_x44_one(), &Interval::Real)?;
    Ok((
        a == 0 && b == 0 && f.is_homogeneous(10),
        format!("real roots of f0(1,t): {a}, of f0(t,1): {b}"),
    ))
}

fn expect(property: Property) -> Expectation {
    Expectation {
        property,
        expected: true,
    }
}

/// Five vectors in `R³` whose hyperplanes fail phase retrieval at `(1, 1, 1)`.
/// One entry is irrational, so the frame lives in the float backend.
pub fn gen_r3_quintet() -> ExampleBundle {
    let s = 1.0 - 2f64.sqrt();
    let vectors = [
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 1.0],
        [0.0, 1.0, 1.0],
        [1.0, s, 2.0],
        [1.0, 1.0, 1.0],
    ]
    .iter()
    .map(|v| Vector::new(v.to_vec()))
    .collect();
    ExampleBundle {
        name: "r3-quintet".into(),
        object: ExampleObject::FloatFrame(Frame::new(3, vectors).expect("valid frame")),
        expectations: vec![
            expect(Property::FullSpark),
            expect(Property::PhaseRetrieval),
            expect(Property::PerpsDeficientAt(vec![1, 1, 1])),
        ],
        xs: None,
    }
}

/// `e_i + e_d` for `i < d`, then the all-ones vector.
fn base_vectors(d: usize) -> Vec<Vector<Rational>> {
    let mut out: Vec<Vector<Rational>> = (0..d - 1)
        .map(|i| Vector::unit(d, i).add(&Vector::unit(d, d - 1)))
        .collect();
    out.push(ones(d));
    out
}

/// `(x, x², …, x^{d−2}, 1 − Σ xⁱ, Σ x^{2i} + (1 − Σ xⁱ)²)`. The first `d − 1`
/// coordinates sum to one, so the last equals their sum of squares.
pub fn family_vector(d: usize, x: &Rational) -> Vector<Rational> {
    let mut head: Vec<Rational> = Vec::with_capacity(d);
    let mut p = Rational::one();
    for _ in 0..d - 2 {
        p *= x;
        head.push(p.clone());
    }
    let sum = head.iter().fold(Rational::zero(), |a, b| a + b);
    head.push(Rational::one() - sum);
    let sq = head.iter().fold(Rational::zero(), |a, b| a + b * b);
    head.push(sq);
    Vector::new(head)
}

/// The `2d − 1` vector family in `R^d` with phase retrieval whose hyperplanes
/// fail it at `(1, …, 1)`.
///
/// With `xs = None` the points `2, 3, …, d` are used, and any point taking
/// part in a dependent `d`-subset is replaced by the next unused integer.
/// Explicit points are never replaced; a dependency is reported instead.
pub fn gen_rd_family(d: usize, xs: Option<&[Rational]>) -> Result<ExampleBundle> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("the R^d family needs d >= 3, got {d}")));
    }
    let explicit = xs.is_some();
    let mut xs: Vec<Rational> = match xs {
        Some(v) => v.to_vec(),
        None => (2..=d as i64).map(int).collect(),
    };
    if xs.len() != d - 1 {
        return Err(Error::InvalidInput(format!(
            "expected d - 1 = {} sample points, got {}",
            d - 1,
            xs.len()
        )));
    }
    for (i, x) in xs.iter().enumerate() {
        if xs[..i].contains(x) {
            return Err(Error::InvalidInput(format!("sample point {x} is repeated")));
        }
    }
    let mut next = d as i64 + 1;
    let mut attempts = 0;
    let frame = loop {
        let mut vectors = base_vectors(d);
        vectors.extend(xs.iter().map(|x| family_vector(d, x)));
        let frame = Frame::new(d, vectors)?;
        let spark = frames::full_spark(&frame)?;
        let Some(dependent) = spark.dependent else { break frame };
        let slot = dependent
            .iter()
            .rev()
            .find(|&&i| i >= d)
            .map(|&i| i - d)
            .expect("the base vectors are independent");
        if explicit {
            let one_based: Vec<usize> = dependent.iter().map(|i| i + 1).collect();
            return Err(Error::InvalidInput(format!(
                "vectors {one_based:?} are linearly dependent; replace sample point {}",
                xs[slot]
            )));
        }
        attempts += 1;
        if attempts > MAX_RETRIES {
            return Err(Error::InvalidInput(format!(
                "no full-spark family found for d = {d} after {MAX_RETRIES} replacements"
            )));
        }
        xs[slot] = int(next);
        next += 1;
    };
    Ok(ExampleBundle {
        name: format!("rd-family(d={d})"),
        object: ExampleObject::Frame(frame),
        expectations: vec![
            expect(Property::SetAIdentity),
            expect(Property::FullSpark),
            expect(Property::PhaseRetrieval),
            expect(Property::ResidualsInLastHyperplane),
            expect(Property::PerpsDeficientAt(vec![1; d])),
        ],
        xs: Some(xs),
    })
}

/// Five planes in `R³` doing phase retrieval whose normals do not.
pub fn gen_r3_hyperplane_quintet() -> ExampleBundle {
    let spans: [[[i64; 3]; 2]; 5] = [
        [[0, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 0, 1]],
        [[1, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 1, 1]],
        [[0, 1, 0], [1, 0, 1]],
    ];
    let subspaces = spans
        .iter()
        .map(|pair| {
            let vs: Vec<Vector<Rational>> = pair.iter().map(|v| Vector::from_i64(v)).collect();
            Subspace::span_of(3, &vs).expect("independent spanning pair")
        })
        .collect();
    ExampleBundle {
        name: "r3-hyperplanes".into(),
        object: ExampleObject::Arrangement(Arrangement::new(3, subspaces).expect("valid arrangement")),
        expectations: vec![
            expect(Property::SubspaceDim(2)),
            expect(Property::NormalsFailCp(vec![0, 1, 2])),
            expect(Property::FalsifierNoWitness {
                restarts: R3_FALSIFIER_RESTARTS,
                seed: EXAMPLE_SEED,
            }),
        ],
        xs: None,
    }
}

/// Integer normals of the six hyperplanes in `R⁴`.
pub const R4_SIX_NORMALS: [[i64; 4]; 6] = [
    [2, -1, 2, 2],
    [2, 5, 4, 1],
    [0, 4, -1, -1],
    [5, 4, -2, -4],
    [4, 1, 5, 3],
    [3, -4, -4, -3],
];

/// Six hyperplanes in `R⁴` doing phase retrieval.
pub fn gen_r4_six_hyperplanes() -> ExampleBundle {
    let normals = R4_SIX_NORMALS.iter().map(|n| Vector::from_i64(n)).collect();
    ExampleBundle {
        name: "r4-six".into(),
        object: ExampleObject::Arrangement(Arrangement::hyperplanes(4, normals).expect("valid arrangement")),
        expectations: vec![
            expect(Property::SubspaceDim(3)),
            expect(Property::F0NoRealRoots),
            expect(Property::FalsifierNoWitness {
                restarts: R4_FALSIFIER_RESTARTS,
                seed: EXAMPLE_SEED,
            }),
            expect(Property::ZProbeNoMember {
                trials: R4_ZPROBE_TRIALS,
                seed: EXAMPLE_SEED,
            }),
        ],
        xs: None,
    }
}
