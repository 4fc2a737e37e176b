//! Random argumentation frameworks and benchmark suites.
//!
//! Randomness comes from ChaCha8 seeded through `SeedableRng::seed_from_u64`;
//! both are value-stable across platforms and crate versions, and the
//! conversions from raw 64-bit words below are spelled out here, so a
//! `(spec, seed)` pair always produces the same framework.
//!
//! * Probability method: each of the `k²` ordered pairs (self-attacks
//!   included), visited row by row, draws `u ∈ (0, 1]` and becomes an attack
//!   iff `u ≤ p`.
//! * Count method: exactly `n` distinct pairs, chosen by a partial
//!   Fisher–Yates shuffle of the `k²` pair indices. When `n` is random it is
//!   first drawn uniformly from `0..=k²`. Self-attacks are eligible.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::{AfError, ArgumentationFramework};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("a framework needs at least one argument")]
    NoArguments,
    #[error("attack probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("{requested} attacks requested but only {max} ordered pairs exist")]
    TooManyAttacks { requested: usize, max: usize },
    #[error("scale factor {0} must be positive")]
    BadScale(f64),
    #[error(transparent)]
    Af(#[from] AfError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
}

/// The portable generator used for every random choice in this module.
#[derive(Debug, Clone)]
pub struct Prng(ChaCha8Rng);

impl Prng {
    pub fn new(seed: u64) -> Self {
        Prng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `(0, 1]` with 53 bits of resolution.
    pub fn unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `0..n` by rejection, so there is no modulo bias.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackCount {
    Fixed(usize),
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenMethod {
    Probability(f64),
    Count(AttackCount),
    Empty,
    FullyConnected,
}

impl GenMethod {
    pub fn name(&self) -> &'static str {
        match self {
            GenMethod::Probability(_) => "probability",
            GenMethod::Count(_) => "count",
            GenMethod::Empty => "empty",
            GenMethod::FullyConnected => "fully_connected",
        }
    }

    fn param(&self) -> Option<GenParam> {
        match *self {
            GenMethod::Probability(p) => Some(GenParam::Number(p)),
            GenMethod::Count(AttackCount::Fixed(n)) => Some(GenParam::Number(n as f64)),
            GenMethod::Count(AttackCount::UniformRandom) => Some(GenParam::Label("random".into())),
            GenMethod::Empty | GenMethod::FullyConnected => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub k: usize,
    pub method: GenMethod,
    pub seed: u64,
}

fn arg_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("a{i}")).collect()
}

pub fn gen_probability(k: usize, p_att: f64, seed: u64) -> Result<ArgumentationFramework, GenError> {
    if k == 0 {
        return Err(GenError::NoArguments);
    }
    if !(0.0..=1.0).contains(&p_att) {
        return Err(GenError::BadProbability(p_att));
    }
    let mut rng = Prng::new(seed);
    let mut attacks = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if rng.unit() <= p_att {
                attacks.push((i, j));
            }
        }
    }
    Ok(ArgumentationFramework::new(arg_names(k), attacks)?)
}

pub fn gen_count(k: usize, count: AttackCount, seed: u64) -> Result<ArgumentationFramework, GenError> {
    if k == 0 {
        return Err(GenError::NoArguments);
    }
    let max = k * k;
    let mut rng = Prng::new(seed);
    let n = match count {
        AttackCount::Fixed(n) if n > max => return Err(GenError::TooManyAttacks { requested: n, max }),
        AttackCount::Fixed(n) => n,
        AttackCount::UniformRandom => rng.below(max as u64 + 1) as usize,
    };
    let mut pairs: Vec<usize> = (0..max).collect();
    for i in 0..n {
        let j = i + rng.below((max - i) as u64) as usize;
        pairs.swap(i, j);
    }
    let attacks = pairs[..n].iter().map(|&p| (p / k, p % k));
    Ok(ArgumentationFramework::new(arg_names(k), attacks)?)
}

pub fn generate(spec: &GenSpec) -> Result<ArgumentationFramework, GenError> {
    match spec.method {
        GenMethod::Probability(p) => gen_probability(spec.k, p, spec.seed),
        GenMethod::Count(n) => gen_count(spec.k, n, spec.seed),
        GenMethod::Empty => gen_count(spec.k, AttackCount::Fixed(0), spec.seed),
        GenMethod::FullyConnected => gen_count(spec.k, AttackCount::Fixed(spec.k * spec.k), spec.seed),
    }
}

/// Shape of a benchmark suite: probability classes, count classes and the
/// two single-instance extreme classes, for each argument count.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSpec {
    pub ks: Vec<usize>,
    pub probabilities: Vec<f64>,
    pub per_probability_class: usize,
    pub per_count_class: usize,
    pub include_probability: bool,
    pub include_count: bool,
    pub include_extremes: bool,
    /// Multiplies the per-class instance counts (rounded, at least one).
    pub scale: f64,
    pub seed: u64,
}

impl SuiteSpec {
    /// 8 sizes × 3 densities × 50, plus 8 count classes × 200, plus 16
    /// extremes: 2816 frameworks at scale 1.
    pub fn full() -> Self {
        SuiteSpec {
            ks: (1..=8).map(|i| 25 * i).collect(),
            probabilities: vec![0.25, 0.5, 0.75],
            per_probability_class: 50,
            per_count_class: 200,
            include_probability: true,
            include_count: true,
            include_extremes: true,
            scale: 1.0,
            seed: 0,
        }
    }

    fn scaled(&self, n: usize) -> usize {
        ((n as f64 * self.scale).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenParam {
    Number(f64),
    Label(String),
}

/// One framework of a suite, as recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub class_id: String,
    pub k: usize,
    pub method: String,
    pub param: Option<GenParam>,
    pub seed: u64,
    /// Relative to the manifest's directory.
    pub path: String,
}

impl ManifestEntry {
    /// The file stem of `path`, used as the instance identifier.
    pub fn instance_id(&self) -> String {
        Path::new(&self.path).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    }

    pub fn spec(&self) -> Option<GenSpec> {
        let method = match (self.method.as_str(), &self.param) {
            ("probability", Some(GenParam::Number(p))) => GenMethod::Probability(*p),
            ("count", Some(GenParam::Number(n))) => GenMethod::Count(AttackCount::Fixed(*n as usize)),
            ("count", Some(GenParam::Label(l))) if l == "random" => GenMethod::Count(AttackCount::UniformRandom),
            ("empty", _) => GenMethod::Empty,
            ("fully_connected", _) => GenMethod::FullyConnected,
            _ => return None,
        };
        Some(GenSpec { k: self.k, method, seed: self.seed })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub generator: String,
    /// The count method treats self-attacks as ordinary pairs.
    pub count_method_includes_self_attacks: bool,
    pub instances: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<(Manifest, PathBuf), GenError> {
        let text = fs::read_to_string(path)?;
        let manifest = serde_json::from_str(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((manifest, base))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// Lays out a suite without touching the file system. Instance seeds are
/// drawn in plan order from a generator seeded with `spec.seed`.
pub fn plan_suite(spec: &SuiteSpec) -> Result<Vec<(ManifestEntry, GenSpec)>, GenError> {
    if spec.scale.is_nan() || spec.scale <= 0.0 {
        return Err(GenError::BadScale(spec.scale));
    }
    let mut rng = Prng::new(spec.seed);
    let mut out = Vec::new();
    let mut push = |class_id: String, k: usize, method: GenMethod, index: usize, rng: &mut Prng| {
        let seed = rng.next_u64();
        let entry = ManifestEntry {
            class_id: class_id.clone(),
            k,
            method: method.name().to_string(),
            param: method.param(),
            seed,
            path: format!("{class_id}/{class_id}-{index:04}.apx"),
        };
        out.push((entry, GenSpec { k, method, seed }));
    };
    for &k in &spec.ks {
        if spec.include_probability {
            for &p in &spec.probabilities {
                let class = format!("prob-k{k:03}-p{p:.2}");
                for i in 0..spec.scaled(spec.per_probability_class) {
                    push(class.clone(), k, GenMethod::Probability(p), i, &mut rng);
                }
            }
        }
        if spec.include_count {
            let class = format!("count-k{k:03}");
            for i in 0..spec.scaled(spec.per_count_class) {
                push(class.clone(), k, GenMethod::Count(AttackCount::UniformRandom), i, &mut rng);
            }
        }
        if spec.include_extremes {
            push(format!("empty-k{k:03}"), k, GenMethod::Empty, 0, &mut rng);
            push(format!("full-k{k:03}"), k, GenMethod::FullyConnected, 0, &mut rng);
        }
    }
    Ok(out)
}

/// Writes every framework of the suite as APX under `out_dir`, plus
/// `manifest.json`.
pub fn gen_suite(spec: &SuiteSpec, out_dir: &Path) -> Result<Manifest, GenError> {
    let plan = plan_suite(spec)?;
    fs::create_dir_all(out_dir)?;
    let mut instances = Vec::with_capacity(plan.len());
    for (entry, gen) in plan {
        let af = generate(&gen)?;
        let path = out_dir.join(&entry.path);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, af.to_apx())?;
        instances.push(entry);
    }
    let manifest = Manifest {
        generator: format!("afsat {}", env!("CARGO_PKG_VERSION")),
        count_method_includes_self_attacks: true,
        instances,
    };
    fs::write(out_dir.join("manifest.json"), manifest.to_json())?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probability_extremes() {
        assert_eq!(gen_probability(7, 0.0, 1).unwrap().num_attacks(), 0);
        let full = gen_probability(7, 1.0, 1).unwrap();
        assert_eq!(full.num_attacks(), 49);
        assert!((0..7).all(|i| full.attacks_contains(i, i)));
        assert!(matches!(gen_probability(3, 1.5, 0), Err(GenError::BadProbability(_))));
        assert!(matches!(gen_probability(0, 0.5, 0), Err(GenError::NoArguments)));
    }

    #[test]
    fn probability_mean_within_three_sigma() {
        // k = 100, p = 0.25: mean of 50 samples vs 2500, σ_mean = 43.3 / √50
        let total: usize = (0..50).map(|s| gen_probability(100, 0.25, s).unwrap().num_attacks()).sum();
        let mean = total as f64 / 50.0;
        let sigma = (10_000.0f64 * 0.25 * 0.75).sqrt();
        assert!((mean - 2500.0).abs() <= 3.0 * sigma / 50f64.sqrt(), "mean {mean}");
    }

    #[test]
    fn count_cardinality() {
        for seed in 0..20 {
            assert_eq!(gen_count(10, AttackCount::Fixed(30), seed).unwrap().num_attacks(), 30);
        }
        assert_eq!(gen_count(6, AttackCount::Fixed(36), 3).unwrap().num_attacks(), 36);
        assert_eq!(gen_count(6, AttackCount::Fixed(0), 3).unwrap().num_attacks(), 0);
        assert!(matches!(
            gen_count(3, AttackCount::Fixed(10), 0),
            Err(GenError::TooManyAttacks { requested: 10, max: 9 })
        ));
    }

    #[test]
    fn determinism() {
        let a = gen_count(20, AttackCount::UniformRandom, 42).unwrap();
        let b = gen_count(20, AttackCount::UniformRandom, 42).unwrap();
        assert_eq!(a.to_apx(), b.to_apx());
        assert_ne!(a.to_apx(), gen_count(20, AttackCount::UniformRandom, 43).unwrap().to_apx());
    }

    #[test]
    fn prng_ranges() {
        let mut r = Prng::new(5);
        for _ in 0..10_000 {
            let u = r.unit();
            assert!(u > 0.0 && u <= 1.0);
            assert!(r.below(7) < 7);
        }
    }

    #[test]
    fn full_suite_size() {
        assert_eq!(plan_suite(&SuiteSpec::full()).unwrap().len(), 2816);
    }

    #[test]
    fn scaled_suite() {
        let spec = SuiteSpec { scale: 0.1, ..SuiteSpec::full() };
        let plan = plan_suite(&spec).unwrap();
        let in_class = |c: &str| plan.iter().filter(|(e, _)| e.class_id == c).count();
        assert_eq!(in_class("prob-k025-p0.25"), 5);
        assert_eq!(in_class("count-k200"), 20);
        assert_eq!(in_class("empty-k050"), 1);
        assert_eq!(in_class("full-k175"), 1);
        let tiny = SuiteSpec { scale: 0.001, ..SuiteSpec::full() };
        assert_eq!(plan_suite(&tiny).unwrap().len(), 8 * 3 + 8 + 16);
        assert!(matches!(plan_suite(&SuiteSpec { scale: 0.0, ..SuiteSpec::full() }), Err(GenError::BadScale(_))));
    }

    #[test]
    fn entries_round_trip_to_specs() {
        let spec = SuiteSpec { ks: vec![5], scale: 0.02, ..SuiteSpec::full() };
        for (entry, gen) in plan_suite(&spec).unwrap() {
            assert_eq!(entry.spec(), Some(gen));
            assert!(entry.instance_id().starts_with(&entry.class_id));
        }
    }
}
