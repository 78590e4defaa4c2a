//! Seeded and exhaustive checks of the semi-abelian, quasi-abelian and
//! integral axioms.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{Mor, Obj, PresentedCategory};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

use super::{coim_im_parallel, cokernel, is_epi, is_mono, is_regular, kernel, pullback, pushout};

/// Largest Hom set enumerated in exhaustive mode.
const EXHAUSTIVE_LIMIT: usize = 1 << 16;

/// How morphisms are drawn for the property suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    /// Sampled mode: objects have at most this many summands.
    /// Exhaustive mode: every indecomposable appears at most this often.
    pub max_mult: usize,
    pub coeff_pool: Vec<Scalar>,
    pub exhaustive: bool,
}

/// `{-1, 0, 1}` over Q, every element over F_p.
pub fn default_coeff_pool(field: Field) -> Vec<Scalar> {
    match field {
        Field::Rational => [-1, 0, 1].iter().map(|&v| field.from_i64(v)).collect(),
        Field::Prime(p) => (0..p as i64).map(|v| field.from_i64(v)).collect(),
    }
}

impl SampleConfig {
    pub fn sampled(field: Field, seed: u64, samples: usize) -> SampleConfig {
        SampleConfig {
            seed,
            samples,
            max_mult: 3,
            coeff_pool: default_coeff_pool(field),
            exhaustive: false,
        }
    }

    pub fn exhaustive(field: Field, max_mult: usize) -> Result<SampleConfig> {
        let cfg = SampleConfig {
            seed: 0,
            samples: 0,
            max_mult,
            coeff_pool: default_coeff_pool(field),
            exhaustive: true,
        };
        cfg.validate(field)?;
        Ok(cfg)
    }

    pub fn validate(&self, field: Field) -> Result<()> {
        if self.exhaustive {
            if !matches!(field, Field::Prime(_)) {
                return Err(Error::Input("exhaustive mode needs a prime field".into()));
            }
            if self.max_mult > 2 {
                return Err(Error::Input("exhaustive mode allows multiplicity at most 2".into()));
            }
        } else if self.coeff_pool.is_empty() {
            return Err(Error::Input("empty coefficient pool".into()));
        }
        if self.coeff_pool.iter().any(|s| s.field() != field) {
            return Err(Error::Input("coefficient pool lives over another field".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    SemiAbelian,
    QuasiAbelian,
    Integral,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::SemiAbelian => "semi-abelian",
            Suite::QuasiAbelian => "quasi-abelian",
            Suite::Integral => "integral",
        }
    }

    pub fn parse(text: &str) -> Option<Suite> {
        [Suite::SemiAbelian, Suite::QuasiAbelian, Suite::Integral]
            .into_iter()
            .find(|s| s.name() == text)
    }
}

/// The morphisms witnessing a failed property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub property: String,
    /// Sample index in sampled mode.
    pub sample: Option<usize>,
    pub morphisms: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub exhaustive: bool,
    /// Instances checked per property, in a fixed order.
    pub checks: Vec<(String, usize)>,
    pub failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn total_checks(&self) -> usize {
        self.checks.iter().map(|(_, c)| c).sum()
    }
}

/// One random stream per (property, sample) so results do not depend on order.
fn stream(cfg: &SampleConfig, property: u64, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream((property << 32) | sample as u64);
    rng
}

fn random_obj(cat: &PresentedCategory, cfg: &SampleConfig, rng: &mut ChaCha8Rng) -> Obj {
    if cat.n() == 0 {
        return Obj::zero();
    }
    let len = rng.gen_range(0..=cfg.max_mult);
    (0..len).map(|_| rng.gen_range(0..cat.n())).collect()
}

fn random_mor(cat: &PresentedCategory, cfg: &SampleConfig, dom: Obj, cod: Obj, rng: &mut ChaCha8Rng) -> Result<Mor> {
    let d = cat.hom_dim(&dom, &cod);
    let coords = (0..d)
        .map(|_| cfg.coeff_pool[rng.gen_range(0..cfg.coeff_pool.len())].clone())
        .collect();
    cat.mor(dom, cod, coords)
}

fn random_mor_between(cat: &PresentedCategory, cfg: &SampleConfig, rng: &mut ChaCha8Rng) -> Result<Mor> {
    let dom = random_obj(cat, cfg, rng);
    let cod = random_obj(cat, cfg, rng);
    random_mor(cat, cfg, dom, cod, rng)
}

/// Every object with each indecomposable at most `max_mult` times.
fn all_objects(cat: &PresentedCategory, max_mult: usize) -> Vec<Obj> {
    let n = cat.n();
    let mut mult = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        out.push(
            mult.iter()
                .enumerate()
                .flat_map(|(i, &m)| core::iter::repeat_n(i, m))
                .collect(),
        );
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if mult[i] < max_mult {
                mult[i] += 1;
                break;
            }
            mult[i] = 0;
            i += 1;
        }
    }
}

/// Every morphism `dom -> cod` over the prime field.
fn all_morphisms(cat: &PresentedCategory, dom: &Obj, cod: &Obj) -> Result<Vec<Mor>> {
    let p = cat.field().characteristic() as usize;
    let d = cat.hom_dim(dom, cod);
    let total = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&t| t <= EXHAUSTIVE_LIMIT));
    let Some(total) = total else {
        return Err(Error::Input(format!(
            "Hom({}, {}) is too large to enumerate",
            cat.obj_name(dom),
            cat.obj_name(cod)
        )));
    };
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut coords = Vec::with_capacity(d);
        for _ in 0..d {
            coords.push(cat.field().from_i64((code % p) as i64));
            code /= p;
        }
        out.push(cat.mor(dom.clone(), cod.clone(), coords)?);
    }
    Ok(out)
}

struct Tally {
    checks: Vec<(String, usize)>,
    failure: Option<Counterexample>,
}

impl Tally {
    fn new(properties: &[&str]) -> Tally {
        Tally {
            checks: properties.iter().map(|p| (String::from(*p), 0)).collect(),
            failure: None,
        }
    }

    /// Records one check; returns `false` once a failure is recorded.
    fn record(&mut self, property: usize, ok: bool, sample: Option<usize>, morphisms: &[&Mor]) -> bool {
        self.checks[property].1 += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Counterexample {
                property: self.checks[property].0.clone(),
                sample,
                morphisms: morphisms.iter().map(|&m| m.clone()).collect(),
            });
        }
        self.failure.is_none()
    }

    fn finish(self, suite: Suite, exhaustive: bool) -> SuiteReport {
        SuiteReport {
            suite,
            exhaustive,
            checks: self.checks,
            failure: self.failure,
        }
    }
}

/// Every morphism in exhaustive mode, or `cfg.samples` random ones from the
/// stream of `property`.
fn morphism_source(
    cat: &PresentedCategory,
    cfg: &SampleConfig,
    property: u64,
    objects: &[Obj],
) -> Result<Vec<(Option<usize>, Mor)>> {
    if cfg.exhaustive {
        let mut out = Vec::new();
        for a in objects {
            for b in objects {
                out.extend(all_morphisms(cat, a, b)?.into_iter().map(|f| (None, f)));
            }
        }
        Ok(out)
    } else {
        (0..cfg.samples)
            .map(|i| Ok((Some(i), random_mor_between(cat, cfg, &mut stream(cfg, property, i))?)))
            .collect()
    }
}

/// Morphisms into (or out of, when `into` is false) `x`: all of them in
/// exhaustive mode, one random one otherwise.
fn partners(
    cat: &PresentedCategory,
    cfg: &SampleConfig,
    objects: &[Obj],
    x: &Obj,
    into: bool,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<Vec<Mor>> {
    match rng {
        None => {
            let mut out = Vec::new();
            for d in objects {
                if into {
                    out.extend(all_morphisms(cat, d, x)?);
                } else {
                    out.extend(all_morphisms(cat, x, d)?);
                }
            }
            Ok(out)
        }
        Some(rng) => {
            let d = random_obj(cat, cfg, rng);
            Ok(vec![if into {
                random_mor(cat, cfg, d, x.clone(), rng)?
            } else {
                random_mor(cat, cfg, x.clone(), d, rng)?
            }])
        }
    }
}

fn prepare(cat: &PresentedCategory, cfg: &SampleConfig) -> Result<Vec<Obj>> {
    cfg.validate(cat.field())?;
    Ok(if cfg.exhaustive {
        all_objects(cat, cfg.max_mult)
    } else {
        Vec::new()
    })
}

/// Every sampled parallel `tilde f` is regular, and `im ∘ tilde ∘ coim = f`.
pub fn check_semi_abelian(cat: &PresentedCategory, cfg: &SampleConfig) -> Result<SuiteReport> {
    let objects = prepare(cat, cfg)?;
    let mut tally = Tally::new(&["parallel reassembles f", "parallel is regular"]);
    for (sample, f) in morphism_source(cat, cfg, 0, &objects)? {
        let par = coim_im_parallel(cat, &f)?;
        let back = cat.compose_chain(&[&par.coim, &par.tilde, &par.im])?;
        if !tally.record(0, back == f, sample, &[&f])
            || !tally.record(1, is_regular(cat, &par.tilde), sample, &[&f, &par.tilde])
        {
            break;
        }
    }
    Ok(tally.finish(Suite::SemiAbelian, cfg.exhaustive))
}

/// Cokernels are stable under pullback and kernels under pushout.
///
/// Sampled mode draws `g`, takes `p = coker g` and pulls it back along a random
/// map into its codomain; dually for `ker g`. Exhaustive mode runs over every
/// cokernel (strict epi) and kernel (strict mono) and every partner map.
pub fn check_quasi_abelian(cat: &PresentedCategory, cfg: &SampleConfig) -> Result<SuiteReport> {
    let objects = prepare(cat, cfg)?;
    let mut tally = Tally::new(&["cokernel stable under pullback", "kernel stable under pushout"]);
    'outer: for (sample, g) in morphism_source(cat, cfg, 1, &objects)? {
        let p = if cfg.exhaustive {
            if !(is_epi(cat, &g) && super::is_strict(cat, &g)?) {
                continue;
            }
            g.clone()
        } else {
            cokernel(cat, &g)?.1.c
        };
        let mut rng = sample.map(|i| stream(cfg, 2, i));
        for c in partners(cat, cfg, &objects, p.cod(), true, &mut rng)? {
            let pb = pullback(cat, &p, &c)?;
            let ok = super::is_cokernel(cat, &pb.to_c)?;
            if !tally.record(0, ok, sample, &[&g, &p, &c, &pb.to_c]) {
                break 'outer;
            }
        }
    }
    'outer: for (sample, g) in morphism_source(cat, cfg, 3, &objects)? {
        let i = if cfg.exhaustive {
            if !(is_mono(cat, &g) && super::is_strict(cat, &g)?) {
                continue;
            }
            g.clone()
        } else {
            kernel(cat, &g)?.1.k
        };
        let mut rng = sample.map(|s| stream(cfg, 4, s));
        for c in partners(cat, cfg, &objects, i.dom(), false, &mut rng)? {
            let po = pushout(cat, &i, &c)?;
            let ok = super::is_kernel(cat, &po.from_c)?;
            if !tally.record(1, ok, sample, &[&g, &i, &c, &po.from_c]) {
                break 'outer;
            }
        }
    }
    Ok(tally.finish(Suite::QuasiAbelian, cfg.exhaustive))
}

/// Epimorphisms are stable under pullback and monomorphisms under pushout.
///
/// Sampled mode uses the epi `tilde ∘ coim` and the mono `im ∘ tilde` of a
/// random `f`, which need not be (co)kernels.
pub fn check_integral(cat: &PresentedCategory, cfg: &SampleConfig) -> Result<SuiteReport> {
    let objects = prepare(cat, cfg)?;
    let mut tally = Tally::new(&["epi stable under pullback", "mono stable under pushout"]);
    'outer: for (sample, f) in morphism_source(cat, cfg, 5, &objects)? {
        let e = if cfg.exhaustive {
            if !is_epi(cat, &f) {
                continue;
            }
            f.clone()
        } else {
            let par = coim_im_parallel(cat, &f)?;
            cat.compose(&par.tilde, &par.coim)?
        };
        if !is_epi(cat, &e) {
            tally.record(0, false, sample, &[&f, &e]);
            break;
        }
        let mut rng = sample.map(|i| stream(cfg, 6, i));
        for c in partners(cat, cfg, &objects, e.cod(), true, &mut rng)? {
            let pb = pullback(cat, &e, &c)?;
            if !tally.record(0, is_epi(cat, &pb.to_c), sample, &[&e, &c, &pb.to_c]) {
                break 'outer;
            }
        }
    }
    'outer: for (sample, f) in morphism_source(cat, cfg, 7, &objects)? {
        let m = if cfg.exhaustive {
            if !is_mono(cat, &f) {
                continue;
            }
            f.clone()
        } else {
            let par = coim_im_parallel(cat, &f)?;
            cat.compose(&par.im, &par.tilde)?
        };
        if !is_mono(cat, &m) {
            tally.record(1, false, sample, &[&f, &m]);
            break;
        }
        let mut rng = sample.map(|i| stream(cfg, 8, i));
        for c in partners(cat, cfg, &objects, m.dom(), false, &mut rng)? {
            let po = pushout(cat, &m, &c)?;
            if !tally.record(1, is_mono(cat, &po.from_c), sample, &[&m, &c, &po.from_c]) {
                break 'outer;
            }
        }
    }
    Ok(tally.finish(Suite::Integral, cfg.exhaustive))
}
