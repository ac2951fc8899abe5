use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::engine::Sampler;
use super::single::{check_ld_laws, check_quantale_laws};
use crate::lattice::shapes;
use crate::quantale::{
    find_dualizers, shift_completion, Carrier, GirardQuantale, LinearQuantale, MonoidTable, Quantale, TableLd,
    TableQuantale, ZInfLd, ZInfQuantale,
};

/// The concrete backend of a catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    Table(TableLd),
    ZInf(ZInfLd),
}

/// What the brute-force checks say about an entry. Dualizers are searched in
/// the tensor part only, over the sampled domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub quantale: bool,
    pub ld: bool,
    pub girard: bool,
    pub dualizers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    /// The lawful entry this one perturbs, if any.
    pub broken_of: Option<String>,
    pub structure: Structure,
    pub classification: Classification,
}

impl CatalogEntry {
    pub fn is_broken(&self) -> bool {
        self.broken_of.is_some()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.structure, Structure::Table(_))
    }

    /// Element count of a finite entry.
    pub fn size(&self) -> Option<usize> {
        match &self.structure {
            Structure::Table(t) => Some(t.domain(0).len()),
            Structure::ZInf(_) => None,
        }
    }
}

fn classify_with<Q: LinearQuantale>(q: &Q, tensor: &impl Quantale<Elem = Q::Elem>, sampler: &Sampler) -> Classification {
    let dualizers: Vec<String> = find_dualizers(tensor, sampler.window)
        .into_iter()
        .map(|d| tensor.render(d))
        .collect();
    Classification {
        quantale: check_quantale_laws(q, sampler).passed(),
        ld: check_ld_laws(q, sampler).passed(),
        girard: !dualizers.is_empty(),
        dualizers,
    }
}

/// Re-derives the classification of `structure` from the law checks and the
/// dualizer search.
pub fn classify(structure: &Structure, sampler: &Sampler) -> Classification {
    match structure {
        Structure::Table(t) => classify_with(t, t.tensor_part(), sampler),
        Structure::ZInf(z) => classify_with(z, z.tensor_part(), sampler),
    }
}

fn three_chain() -> TableQuantale {
    TableQuantale::meet_frame(Arc::new(shapes::chain(&["0", "m", "1"])))
}

fn girard_table(base: TableQuantale, d: &str) -> TableLd {
    let d = base.elem(d).expect("dualizer is an element");
    GirardQuantale::new(base, d).expect("dualizing").to_ld()
}

/// `par(⊥, ⊥) := ⊤`, which breaks the par structure of every table here.
fn break_table(t: &TableLd) -> TableLd {
    let (bot, top) = (t.bottom(), t.top());
    t.with_par_entry(bot, bot, top)
}

/// Mixed infinities in the par resolve to the bottom instead of the top.
fn break_zinf(z: &ZInfLd) -> ZInfLd {
    z.with_par_mixed(z.tensor_part().flavor().bottom())
}

fn lawful_entries() -> Vec<(&'static str, &'static str, Structure)> {
    let tropical = ZInfLd::new(ZInfQuantale::tropical(), 0);
    let meet_par = {
        let q = three_chain();
        let l = q.lattice().clone();
        TableLd::from_fn(q, l.top(), move |a, b| l.meet(a, b))
    };
    let join_par = {
        let q = three_chain();
        let l = q.lattice().clone();
        TableLd::from_fn(q, l.bottom(), move |a, b| l.join(a, b))
    };
    vec![
        ("boolean", "two-element Boolean quantale, Girard with d = 0", Structure::Table(girard_table(TableQuantale::boolean(), "0"))),
        ("three-chain-frame", "chain 0 < m < 1 with tensor = par = meet", Structure::Table(meet_par)),
        ("three-chain-ld", "chain 0 < m < 1 with tensor = meet and par = join", Structure::Table(join_par)),
        (
            "diamond-frame",
            "diamond lattice with tensor = meet and its Girard par",
            Structure::Table(girard_table(TableQuantale::meet_frame(Arc::new(shapes::diamond())), "0")),
        ),
        (
            "shift-z2",
            "shift completion of Z/2 with shift g",
            Structure::Table(shift_completion(&MonoidTable::cyclic(2), "g").expect("cyclic monoid")),
        ),
        (
            "shift-z3",
            "shift completion of Z/3 with shift g",
            Structure::Table(shift_completion(&MonoidTable::cyclic(3), "g").expect("cyclic monoid")),
        ),
        ("zinf-tropical", "extended integers, max-plus tensor and +∞-absorbing par", Structure::ZInf(tropical)),
        ("zinf-arctic", "extended integers, min-plus tensor (the opposite of tropical)", Structure::ZInf(tropical.opposite())),
        ("one-point", "the one-element quantale", Structure::Table(girard_table(TableQuantale::trivial(), "*"))),
    ]
}

fn build(sampler: &Sampler) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (name, description, structure) in lawful_entries() {
        let broken = match &structure {
            Structure::Table(t) if t.domain(0).len() > 1 => Some(Structure::Table(break_table(t))),
            Structure::Table(_) => None,
            Structure::ZInf(z) => Some(Structure::ZInf(break_zinf(z))),
        };
        out.push(CatalogEntry {
            name: name.to_string(),
            description: description.to_string(),
            broken_of: None,
            classification: classify(&structure, sampler),
            structure,
        });
        if let Some(structure) = broken {
            out.push(CatalogEntry {
                name: format!("{name}-broken"),
                description: format!("{description}, with one par value perturbed"),
                broken_of: Some(name.to_string()),
                classification: classify(&structure, sampler),
                structure,
            });
        }
    }
    out
}

/// Every catalog entry, lawful ones each followed by their broken variant.
/// Classifications are derived once with the exhaustive sampler.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| build(&Sampler::exhaustive()))
}

/// Builds the catalog from scratch, bypassing the cache.
pub fn derive_catalog(sampler: &Sampler) -> Vec<CatalogEntry> {
    build(sampler)
}

/// Accepts entry names plus the spellings `three-chain` (the frame) and
/// `broken-<name>`.
pub fn canonical_entry_name(name: &str) -> String {
    let name = name.trim().to_ascii_lowercase();
    let (base, broken) = match name.strip_prefix("broken-") {
        Some(rest) => (rest.to_string(), true),
        None => match name.strip_suffix("-broken") {
            Some(rest) => (rest.to_string(), true),
            None => (name.clone(), false),
        },
    };
    let base = match base.as_str() {
        "three-chain" => "three-chain-frame".to_string(),
        "diamond" => "diamond-frame".to_string(),
        "tropical" => "zinf-tropical".to_string(),
        "arctic" => "zinf-arctic".to_string(),
        _ => base,
    };
    if broken {
        format!("{base}-broken")
    } else {
        base
    }
}

pub fn catalog_entry(name: &str) -> Option<&'static CatalogEntry> {
    let name = canonical_entry_name(name);
    catalog().iter().find(|e| e.name == name)
}
