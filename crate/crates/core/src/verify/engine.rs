use std::fmt::Debug;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{Map, Value};

use super::report::{Entry, LawReport};
use crate::quantale::DEFAULT_WINDOW;

/// Name of the deterministic generator behind every random sample.
pub const GENERATOR: &str = "chacha8";

/// Exhaustive hom enumeration is used only for homs of at most this size.
pub const DEFAULT_SLOT_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Every tuple, as long as each hom has at most `cap` elements and the
    /// tuple space stays under the sampler's `tuple_cap`.
    Exhaustive { cap: usize },
    /// `count` tuples drawn from the seeded generator.
    Random { count: usize },
}

/// How law arguments are drawn. A pure function of its fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampler {
    pub mode: SampleMode,
    pub seed: u64,
    /// Finite entries of the extended integers are drawn from `[-window, window]`.
    pub window: i64,
    /// Largest tuple space (per object tuple) enumerated in exhaustive mode.
    pub tuple_cap: usize,
    /// Samples per object tuple when exhaustive enumeration is over a cap.
    pub fallback_count: usize,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::exhaustive()
    }
}

impl Sampler {
    pub fn exhaustive() -> Self {
        Sampler {
            mode: SampleMode::Exhaustive {
                cap: DEFAULT_SLOT_CAP,
            },
            seed: 0,
            window: DEFAULT_WINDOW,
            tuple_cap: 1 << 18,
            fallback_count: 512,
        }
    }

    pub fn random(seed: u64, count: usize) -> Self {
        Sampler {
            mode: SampleMode::Random { count },
            seed,
            ..Sampler::exhaustive()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_window(mut self, window: i64) -> Self {
        self.window = window;
        self
    }

    pub fn with_tuple_cap(mut self, cap: usize) -> Self {
        self.tuple_cap = cap;
        self
    }

    pub fn with_fallback_count(mut self, count: usize) -> Self {
        self.fallback_count = count;
        self
    }

    pub fn slot_cap(&self) -> usize {
        match self.mode {
            SampleMode::Exhaustive { cap } => cap,
            SampleMode::Random { .. } => DEFAULT_SLOT_CAP,
        }
    }

    fn random_label(&self, count: usize) -> String {
        format!("random({GENERATOR},seed={},count={count})", self.seed)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// The generator for sample `index` of `stream` under `seed`.
pub fn sample_rng(seed: u64, stream: &str, index: u64) -> ChaCha8Rng {
    let h = splitmix(splitmix(fnv1a(stream) ^ seed) ^ index);
    ChaCha8Rng::seed_from_u64(h)
}

/// A locally posetal bicategory whose hom-posets are lattices and whose
/// composition is written in diagrammatic order.
pub trait Quantaloid: Sync {
    type Object: Clone + Debug + Send + Sync;
    type Arrow: Clone + PartialEq + Debug + Send + Sync;

    /// The objects that law variables range over.
    fn objects(&self) -> Vec<Self::Object>;
    /// `None` when the hom is too large or infinite to enumerate.
    fn hom_size(&self, a: &Self::Object, b: &Self::Object, cap: usize) -> Option<usize>;
    /// Element `i` of the hom in a fixed enumeration order.
    fn hom_nth(&self, a: &Self::Object, b: &Self::Object, i: usize) -> Self::Arrow;
    fn random_arrow(
        &self,
        a: &Self::Object,
        b: &Self::Object,
        rng: &mut ChaCha8Rng,
        window: i64,
    ) -> Self::Arrow;

    fn leq(&self, f: &Self::Arrow, g: &Self::Arrow) -> bool;
    fn join(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow;
    fn meet(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow;
    fn bottom(&self, a: &Self::Object, b: &Self::Object) -> Self::Arrow;
    fn top(&self, a: &Self::Object, b: &Self::Object) -> Self::Arrow;
    fn tensor(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow;
    fn unit(&self, a: &Self::Object) -> Self::Arrow;

    fn encode_object(&self, a: &Self::Object) -> Value;
    fn encode_arrow(&self, f: &Self::Arrow) -> Value;

    /// Candidates strictly below `f` in the same hom, used for shrinking.
    fn shrink_arrow(&self, _f: &Self::Arrow) -> Vec<Self::Arrow> {
        Vec::new()
    }

    /// Smaller witnesses to try, in preference order. The default moves one
    /// arrow at a time down the order.
    fn shrink(
        &self,
        objects: &[Self::Object],
        arrows: &[Self::Arrow],
    ) -> Vec<(Vec<Self::Object>, Vec<Self::Arrow>)> {
        let mut out = Vec::new();
        for (i, f) in arrows.iter().enumerate() {
            for c in self.shrink_arrow(f) {
                let mut next = arrows.to_vec();
                next[i] = c;
                out.push((objects.to_vec(), next));
            }
        }
        out
    }
}

/// A quantaloid with a second composition `par` (unit `par_unit`) intended
/// to make the hom-posets quantaloids in the opposite order.
pub trait LinearQuantaloid: Quantaloid {
    fn par(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow;
    fn par_unit(&self, a: &Self::Object) -> Self::Arrow;
    /// Whether `par` and `par_unit` are defined.
    fn has_par(&self) -> bool {
        true
    }
}

/// Residuals of tensor composition.
pub trait Residuated: Quantaloid {
    /// For `f: a → b` and `h: a → c`, the largest `g: b → c` with `f ⊗ g ≤ h`.
    fn residual_right(&self, f: &Self::Arrow, h: &Self::Arrow) -> Self::Arrow;
    /// For `h: a → c` and `f: b → c`, the largest `g: a → b` with `g ⊗ f ≤ h`.
    fn residual_left(&self, h: &Self::Arrow, f: &Self::Arrow) -> Self::Arrow;
}

pub type Predicate<V> = Arc<
    dyn Fn(&V, &[<V as Quantaloid>::Object], &[<V as Quantaloid>::Arrow]) -> bool + Send + Sync,
>;

/// A universally quantified statement over objects and arrows between them.
pub struct Law<V: Quantaloid> {
    pub name: String,
    pub object_names: Vec<&'static str>,
    /// For each arrow variable: its name and (source, target) object variable.
    pub arrows: Vec<(&'static str, usize, usize)>,
    pub holds: Predicate<V>,
}

impl<V: Quantaloid> Clone for Law<V> {
    fn clone(&self) -> Self {
        Law {
            name: self.name.clone(),
            object_names: self.object_names.clone(),
            arrows: self.arrows.clone(),
            holds: self.holds.clone(),
        }
    }
}

impl<V: Quantaloid> Law<V> {
    pub fn new<F>(
        name: impl Into<String>,
        object_names: &[&'static str],
        arrows: &[(&'static str, usize, usize)],
        holds: F,
    ) -> Self
    where
        F: Fn(&V, &[V::Object], &[V::Arrow]) -> bool + Send + Sync + 'static,
    {
        Law {
            name: name.into(),
            object_names: object_names.to_vec(),
            arrows: arrows.to_vec(),
            holds: Arc::new(holds),
        }
    }

    pub fn evaluate(&self, v: &V, objects: &[V::Object], arrows: &[V::Arrow]) -> bool {
        (self.holds)(v, objects, arrows)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Serializes a witness as `name -> value`, objects first.
    pub fn witness(&self, v: &V, objects: &[V::Object], arrows: &[V::Arrow]) -> Map<String, Value> {
        let mut w = Map::new();
        for (name, o) in self.object_names.iter().zip(objects) {
            w.insert((*name).to_string(), v.encode_object(o));
        }
        for ((name, _, _), f) in self.arrows.iter().zip(arrows) {
            w.insert((*name).to_string(), v.encode_arrow(f));
        }
        w
    }
}

/// Mixed-radix decoding of `index` into digits with the first digit most
/// significant, so increasing indices are lexicographic order.
fn digits(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

/// A failing instance of a law, before serialization.
pub struct Counterexample<V: Quantaloid> {
    pub objects: Vec<V::Object>,
    pub arrows: Vec<V::Arrow>,
}

/// Searches for the first counterexample (lexicographic in exhaustive mode,
/// first sample index in random mode) and returns it with a mode label.
pub fn find_counterexample<V: Quantaloid>(
    v: &V,
    law: &Law<V>,
    sampler: &Sampler,
) -> (Option<Counterexample<V>>, String) {
    let objects = v.objects();
    let k = law.object_names.len();
    if objects.is_empty() && k > 0 {
        return (None, "exhaustive".to_string());
    }
    match sampler.mode {
        SampleMode::Random { count } => {
            let found = (0..count).into_par_iter().find_map_first(|s| {
                let mut rng = sample_rng(sampler.seed, &law.name, s as u64);
                let objs: Vec<_> = (0..k)
                    .map(|_| objects[rng.gen_range(0..objects.len())].clone())
                    .collect();
                let arrows: Vec<_> = law
                    .arrows
                    .iter()
                    .map(|&(_, s, t)| v.random_arrow(&objs[s], &objs[t], &mut rng, sampler.window))
                    .collect();
                (!law.evaluate(v, &objs, &arrows)).then_some(Counterexample {
                    objects: objs,
                    arrows,
                })
            });
            (found, sampler.random_label(count))
        }
        SampleMode::Exhaustive { cap } => {
            let mut used_random = false;
            let object_tuples = objects.len().pow(k as u32);
            for t in 0..object_tuples {
                let objs: Vec<_> = digits(t, &vec![objects.len(); k])
                    .into_iter()
                    .map(|i| objects[i].clone())
                    .collect();
                let sizes: Option<Vec<usize>> = law
                    .arrows
                    .iter()
                    .map(|&(_, s, tg)| v.hom_size(&objs[s], &objs[tg], cap))
                    .collect();
                let space = sizes.as_ref().and_then(|sz| {
                    sz.iter()
                        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
                        .filter(|&n| n <= sampler.tuple_cap)
                });
                let found = match (sizes, space) {
                    (Some(sizes), Some(space)) => (0..space).into_par_iter().find_map_first(|i| {
                        let arrows: Vec<_> = digits(i, &sizes)
                            .into_iter()
                            .zip(&law.arrows)
                            .map(|(d, &(_, s, tg))| v.hom_nth(&objs[s], &objs[tg], d))
                            .collect();
                        (!law.evaluate(v, &objs, &arrows)).then_some(arrows)
                    }),
                    _ => {
                        used_random = true;
                        let stream = format!("{}#{t}", law.name);
                        (0..sampler.fallback_count).into_par_iter().find_map_first(|s| {
                            let mut rng = sample_rng(sampler.seed, &stream, s as u64);
                            let arrows: Vec<_> = law
                                .arrows
                                .iter()
                                .map(|&(_, s, tg)| {
                                    v.random_arrow(&objs[s], &objs[tg], &mut rng, sampler.window)
                                })
                                .collect();
                            (!law.evaluate(v, &objs, &arrows)).then_some(arrows)
                        })
                    }
                };
                if let Some(arrows) = found {
                    let mode = mode_label(sampler, used_random);
                    return (
                        Some(Counterexample {
                            objects: objs,
                            arrows,
                        }),
                        mode,
                    );
                }
            }
            (None, mode_label(sampler, used_random))
        }
    }
}

fn mode_label(sampler: &Sampler, used_random: bool) -> String {
    if used_random {
        format!(
            "exhaustive+{}",
            sampler.random_label(sampler.fallback_count)
        )
    } else {
        "exhaustive".to_string()
    }
}

/// Greedy deterministic shrinking: repeatedly adopts the first candidate
/// that still violates the law.
pub fn shrink_counterexample<V: Quantaloid>(
    v: &V,
    law: &Law<V>,
    mut cx: Counterexample<V>,
) -> Counterexample<V> {
    for _ in 0..256 {
        let next = v
            .shrink(&cx.objects, &cx.arrows)
            .into_iter()
            .find(|(o, a)| !law.evaluate(v, o, a));
        match next {
            Some((objects, arrows)) => cx = Counterexample { objects, arrows },
            None => break,
        }
    }
    cx
}

pub fn check_law<V: Quantaloid>(v: &V, law: &Law<V>, sampler: &Sampler) -> Entry {
    let (found, mode) = find_counterexample(v, law, sampler);
    match found {
        None => Entry::pass(&law.name, mode),
        Some(cx) => {
            let cx = shrink_counterexample(v, law, cx);
            Entry::fail(&law.name, mode, law.witness(v, &cx.objects, &cx.arrows))
        }
    }
}

/// Runs every law (concurrently); entries keep the order of `laws`.
pub fn run_suite<V: Quantaloid>(
    suite: &str,
    v: &V,
    laws: &[Law<V>],
    sampler: &Sampler,
) -> LawReport {
    let entries: Vec<Entry> = laws.par_iter().map(|l| check_law(v, l, sampler)).collect();
    LawReport {
        suite: suite.to_string(),
        entries,
    }
}
