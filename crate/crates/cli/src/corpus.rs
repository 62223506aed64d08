//! Corpus file model and resolution.
//!
//! A corpus is one JSON document with top-level keys `rings`, `families`,
//! `extensions`, `spaces` and `config`. References are by name and must
//! point at entries defined earlier in the file (rings before families and
//! extensions). Resolution validates everything eagerly; items that fail
//! keep their error next to their name so a batch never aborts halfway.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use skewpbw_core::endo::{
    build_derivation, build_endomorphism, zero_derivation, MapFamily, RingMap,
};
use skewpbw_core::finring::{
    self, build_ring, FiniteRing, RingSpec,
};
use skewpbw_core::skewpbw::{build_extension, Extension, SkewPbwData};
use skewpbw_core::spectop::{synthetic_space, SyntheticSpace};

// ---------------------------------------------------------------------------
// Serde model
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    #[serde(default)]
    pub rings: Vec<RingDef>,
    #[serde(default)]
    pub families: Vec<FamilyDef>,
    #[serde(default)]
    pub extensions: Vec<ExtensionDef>,
    #[serde(default)]
    pub spaces: Vec<SpaceDef>,
    #[serde(default)]
    pub config: ConfigDef,
}

#[derive(Debug, Deserialize)]
pub struct RingDef {
    pub name: String,
    #[serde(flatten)]
    pub kind: RingKindDef,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKindDef {
    Zn { n: usize },
    Gf { q: usize },
    Ut2 { n: usize },
    Ut2EqualDiag { n: usize },
    TruncSt { p: usize, k: usize },
    TruncT2 { p: usize },
    Product { parts: [String; 2] },
    Raw {
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

impl RingKindDef {
    pub fn kind_name(&self) -> &'static str {
        match self {
            RingKindDef::Zn { .. } => "zn",
            RingKindDef::Gf { .. } => "gf",
            RingKindDef::Ut2 { .. } => "ut2",
            RingKindDef::Ut2EqualDiag { .. } => "ut2_equal_diag",
            RingKindDef::TruncSt { .. } => "trunc_st",
            RingKindDef::TruncT2 { .. } => "trunc_t2",
            RingKindDef::Product { .. } => "product",
            RingKindDef::Raw { .. } => "raw",
        }
    }
}

/// A map is a named built-in (bare string or `{"builtin": ...}`) or an
/// inline image array.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapRef {
    Builtin(String),
    Object {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        builtin: Option<String>,
        #[serde(default)]
        images: Option<Vec<usize>>,
    },
}

#[derive(Debug, Deserialize)]
pub struct FamilyDef {
    pub name: String,
    pub ring: String,
    pub sigma: Vec<MapRef>,
    #[serde(default)]
    pub delta: Option<Vec<MapRef>>,
}

#[derive(Debug, Deserialize)]
pub struct ExtensionDef {
    pub name: String,
    pub ring: String,
    pub sigma: Vec<MapRef>,
    #[serde(default)]
    pub delta: Option<Vec<MapRef>>,
    #[serde(default)]
    pub d: Vec<usize>,
    #[serde(default)]
    pub r: Vec<Vec<usize>>,
    #[serde(default)]
    pub degree_cap: Option<u32>,
}

#[derive(Debug, Deserialize)]
pub struct SpaceDef {
    pub name: String,
    pub nodes: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
    pub max: Vec<String>,
    #[serde(default)]
    pub sspec: Option<Vec<String>>,
    #[serde(default)]
    pub jspec: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDef {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub ring_cap: Option<usize>,
    #[serde(default)]
    pub probe_degree: Option<u32>,
    #[serde(default)]
    pub probe_support: Option<usize>,
    #[serde(default)]
    pub probe_budget: Option<u64>,
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

pub struct RingItem {
    pub name: String,
    pub kind: RingKindDef,
    pub ring: Result<Arc<FiniteRing>, String>,
}

pub struct FamilyItem {
    pub name: String,
    pub ring_name: String,
    pub family: Result<(Arc<FiniteRing>, MapFamily), String>,
}

pub struct ExtensionItem {
    pub name: String,
    pub ring_name: String,
    pub extension: Result<Extension, String>,
}

pub struct SpaceItem {
    pub name: String,
    pub space: Result<SyntheticSpace, String>,
}

pub struct Corpus {
    pub rings: Vec<RingItem>,
    pub families: Vec<FamilyItem>,
    pub extensions: Vec<ExtensionItem>,
    pub spaces: Vec<SpaceItem>,
    pub config: ConfigDef,
}

impl Corpus {
    pub fn has_validation_errors(&self) -> bool {
        self.rings.iter().any(|r| r.ring.is_err())
            || self.families.iter().any(|f| f.family.is_err())
            || self.extensions.iter().any(|e| e.extension.is_err())
            || self.spaces.iter().any(|s| s.space.is_err())
    }

    pub fn ring_by_name(&self, name: &str) -> Option<&RingItem> {
        self.rings.iter().find(|r| r.name == name)
    }
}

/// Parse a corpus document; syntax and schema violations abort with a
/// pointer-style location.
pub fn parse_corpus(text: &str) -> Result<CorpusFile, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| format!("corpus schema violation at /{}: {}", e.path(), e.inner()))
}

fn ring_spec_of(def: &RingKindDef, rings: &[RingItem]) -> Result<RingSpec, String> {
    Ok(match def {
        RingKindDef::Zn { n } => RingSpec::Zn { n: *n },
        RingKindDef::Gf { q } => RingSpec::Gf { q: *q },
        RingKindDef::Ut2 { n } => RingSpec::Ut2 { n: *n },
        RingKindDef::Ut2EqualDiag { n } => RingSpec::Ut2EqualDiag { n: *n },
        RingKindDef::TruncSt { p, k } => RingSpec::TruncSt { p: *p, k: *k },
        RingKindDef::TruncT2 { p } => RingSpec::TruncT2 { p: *p },
        RingKindDef::Product { parts } => {
            let mut specs = Vec::new();
            for part in parts {
                let item = rings
                    .iter()
                    .find(|r| r.name == *part)
                    .ok_or_else(|| format!("unresolved ring reference {part}"))?;
                specs.push(ring_spec_of(&item.kind, rings)?);
            }
            let right = specs.pop().unwrap();
            let left = specs.pop().unwrap();
            RingSpec::Product(Box::new(left), Box::new(right))
        }
        RingKindDef::Raw { .. } => unreachable!("raw handled separately"),
    })
}

fn build_ring_item(def: &RingDef, done: &[RingItem]) -> Result<Arc<FiniteRing>, String> {
    match &def.kind {
        RingKindDef::Raw { add, mul, zero, one, labels } => {
            finring::build_raw(&def.name, add, mul, *zero, *one, labels.as_deref())
                .map(Arc::new)
                .map_err(|e| e.to_string())
        }
        other => {
            let spec = ring_spec_of(other, done)?;
            build_ring(&spec).map(Arc::new).map_err(|e| e.to_string())
        }
    }
}

/// Image table for a named built-in map on a ring of known kind.
fn builtin_images(
    name: &str,
    ring: &Arc<FiniteRing>,
    kind: &RingKindDef,
) -> Result<Vec<u16>, String> {
    match name {
        "id" | "identity" => Ok(ring.elements().collect()),
        "zero" => Ok(vec![ring.zero(); ring.order()]),
        "frobenius" => Ok(finring::frobenius_images(ring)),
        "swap" | "swap_st" => match kind {
            RingKindDef::TruncSt { p, k } => Ok(finring::trunc_st_swap_images(*p, *k)),
            _ => Err(format!("builtin {name} needs a trunc_st ring")),
        },
        "kill_all_but_a" => match kind {
            RingKindDef::Ut2 { n } => Ok(finring::ut2_kill_all_but_a_images(*n)),
            _ => Err(format!("builtin {name} needs a ut2 ring")),
        },
        "kill_all_but_c" => match kind {
            RingKindDef::Ut2 { n } => Ok(finring::ut2_kill_all_but_c_images(*n)),
            _ => Err(format!("builtin {name} needs a ut2 ring")),
        },
        "negate_b" => match kind {
            RingKindDef::Ut2EqualDiag { n } => Ok(finring::ut2eq_negate_b_images(*n)),
            _ => Err(format!("builtin {name} needs a ut2_equal_diag ring")),
        },
        "kill_b" => match kind {
            RingKindDef::Ut2EqualDiag { n } => Ok(finring::ut2eq_kill_b_images(*n)),
            _ => Err(format!("builtin {name} needs a ut2_equal_diag ring")),
        },
        "d_dt" => match kind {
            RingKindDef::TruncT2 { p } => Ok(finring::trunc_t2_derivation_images(*p)),
            _ => Err(format!("builtin {name} needs a trunc_t2 ring")),
        },
        other => Err(format!("unknown builtin map {other}")),
    }
}

fn map_display_name(m: &MapRef, fallback: String) -> String {
    match m {
        MapRef::Builtin(n) => n.clone(),
        MapRef::Object { name: Some(n), .. } => n.clone(),
        MapRef::Object { builtin: Some(b), .. } => b.clone(),
        MapRef::Object { .. } => fallback,
    }
}

fn map_images(
    m: &MapRef,
    ring: &Arc<FiniteRing>,
    kind: &RingKindDef,
) -> Result<Vec<u16>, String> {
    match m {
        MapRef::Builtin(b) => builtin_images(b, ring, kind),
        MapRef::Object { builtin: Some(b), images: None, .. } => builtin_images(b, ring, kind),
        MapRef::Object { builtin: None, images: Some(imgs), .. } => {
            Ok(imgs.iter().map(|&v| v as u16).collect())
        }
        MapRef::Object { .. } => {
            Err("map object needs exactly one of `builtin` or `images`".to_string())
        }
    }
}

fn resolve_sigma(
    m: &MapRef,
    index: usize,
    ring: &Arc<FiniteRing>,
    kind: &RingKindDef,
) -> Result<RingMap, String> {
    let name = map_display_name(m, format!("sigma_{}", index + 1));
    let images = map_images(m, ring, kind)?;
    build_endomorphism(ring, images, name.clone())
        .map_err(|e| format!("sigma {name}: {e}"))
}

fn resolve_delta(
    m: &MapRef,
    index: usize,
    sigma: &RingMap,
    ring: &Arc<FiniteRing>,
    kind: &RingKindDef,
) -> Result<RingMap, String> {
    let name = map_display_name(m, format!("delta_{}", index + 1));
    let images = map_images(m, ring, kind)?;
    build_derivation(ring, images, sigma, name.clone())
        .map_err(|e| format!("delta {name}: {e}"))
}

fn resolve_maps(
    sigma: &[MapRef],
    delta: Option<&Vec<MapRef>>,
    ring: &Arc<FiniteRing>,
    kind: &RingKindDef,
) -> Result<(Vec<RingMap>, Vec<RingMap>), String> {
    let sigmas: Vec<RingMap> = sigma
        .iter()
        .enumerate()
        .map(|(i, m)| resolve_sigma(m, i, ring, kind))
        .collect::<Result<_, _>>()?;
    let deltas: Vec<RingMap> = match delta {
        None => sigmas.iter().map(|_| zero_derivation(ring)).collect(),
        Some(ds) => {
            if ds.len() != sigmas.len() {
                return Err(format!(
                    "{} sigmas but {} deltas",
                    sigmas.len(),
                    ds.len()
                ));
            }
            ds.iter()
                .enumerate()
                .map(|(i, m)| resolve_delta(m, i, &sigmas[i], ring, kind))
                .collect::<Result<_, _>>()?
        }
    };
    Ok((sigmas, deltas))
}

/// Resolve every definition, keeping per-item errors.
pub fn resolve(file: &CorpusFile) -> Corpus {
    let mut rings: Vec<RingItem> = Vec::new();
    let mut names: BTreeMap<String, &'static str> = BTreeMap::new();
    for def in &file.rings {
        let ring = if names.contains_key(&def.name) {
            Err(format!("duplicate name {}", def.name))
        } else {
            build_ring_item(def, &rings)
        };
        names.insert(def.name.clone(), "ring");
        rings.push(RingItem { name: def.name.clone(), kind: def.kind.clone(), ring });
    }

    let lookup = |name: &str, rings: &[RingItem]| -> Result<(Arc<FiniteRing>, RingKindDef), String> {
        let item = rings
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| format!("unresolved ring reference {name}"))?;
        let ring = item.ring.clone().map_err(|e| format!("ring {name} failed: {e}"))?;
        Ok((ring, item.kind.clone()))
    };

    let families: Vec<FamilyItem> = file
        .families
        .iter()
        .map(|def| {
            let family = lookup(&def.ring, &rings).and_then(|(ring, kind)| {
                let (sigmas, deltas) =
                    resolve_maps(&def.sigma, def.delta.as_ref(), &ring, &kind)?;
                MapFamily::new(&ring, sigmas, Some(deltas))
                    .map(|f| (Arc::clone(&ring), f))
                    .map_err(|e| e.to_string())
            });
            FamilyItem { name: def.name.clone(), ring_name: def.ring.clone(), family }
        })
        .collect();

    let extensions: Vec<ExtensionItem> = file
        .extensions
        .iter()
        .map(|def| {
            let extension = lookup(&def.ring, &rings).and_then(|(ring, kind)| {
                let (sigmas, deltas) =
                    resolve_maps(&def.sigma, def.delta.as_ref(), &ring, &kind)?;
                let d: Vec<u16> = def.d.iter().map(|&v| v as u16).collect();
                let r_consts: Vec<Vec<u16>> = def
                    .r
                    .iter()
                    .map(|v| v.iter().map(|&x| x as u16).collect())
                    .collect();
                build_extension(SkewPbwData {
                    name: def.name.clone(),
                    ring,
                    sigmas,
                    deltas,
                    d,
                    r_consts,
                    degree_cap: def.degree_cap.unwrap_or(6),
                })
                .map_err(|e| e.to_string())
            });
            ExtensionItem { name: def.name.clone(), ring_name: def.ring.clone(), extension }
        })
        .collect();

    let spaces: Vec<SpaceItem> = file
        .spaces
        .iter()
        .map(|def| {
            let covers: Vec<(String, String)> = def
                .covers
                .iter()
                .map(|[a, b]| (a.clone(), b.clone()))
                .collect();
            let space = synthetic_space(
                &def.nodes,
                &covers,
                &def.max,
                def.sspec.as_deref(),
                def.jspec.as_deref(),
            )
            .map_err(|e| e.to_string());
            SpaceItem { name: def.name.clone(), space }
        })
        .collect();

    Corpus {
        rings,
        families,
        extensions,
        spaces,
        config: ConfigDef {
            seed: file.config.seed,
            ring_cap: file.config.ring_cap,
            probe_degree: file.config.probe_degree,
            probe_support: file.config.probe_support,
            probe_budget: file.config.probe_budget,
        },
    }
}

/// The corpus shipped with the binary, covering the example rings, map
/// families, extensions and synthetic spaces the test suite expects.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.json");

pub fn load_default() -> Corpus {
    let file = parse_corpus(DEFAULT_CORPUS).expect("bundled corpus parses");
    resolve(&file)
}
