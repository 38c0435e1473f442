//! Enumeration of all endorelations on GF(p)^n and their partition into
//! shift-equivalence classes, with CSV/DOT/JSON export.

use crate::field::Prime;
use crate::leray::EndoObject;
use crate::relation::{LinearRelation, RelationDoc};
use crate::subspace::enumerate_subspaces;
use crate::szymczak::{szym_label, SzymClassLabel};
use crate::Result;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

/// Deterministic stream of every endorelation on GF(p)^n: all subspaces
/// of GF(p)^{2n} read as graphs. Same guard and order as the subspace
/// enumeration.
pub fn enumerate_relations(p: Prime, n: usize) -> Result<impl Iterator<Item = LinearRelation>> {
    Ok(enumerate_subspaces(p, 2 * n)?.map(move |g| LinearRelation::from_graph(n, n, g)))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub label: SzymClassLabel,
    pub size: usize,
    pub members: Vec<RelationDoc>,
}

/// The full partition of the endorelations on GF(p)^n.
///
/// Classes are sorted by label and members keep enumeration order, so
/// serialization is byte-deterministic; wall-clock timing stays out of
/// the serialized form for the same reason.
#[derive(Clone, Debug, Serialize)]
pub struct ClassTable {
    pub p: u64,
    pub dim: usize,
    pub total_relations: usize,
    pub include_zero_object: bool,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Add (0, id_0) as an extra member of its class.
    pub include_zero_object: bool,
    /// Worker threads; `None` uses the global pool. The output never
    /// depends on the worker count.
    pub workers: Option<usize>,
    /// Optional on-disk label cache, keyed by canonical relation
    /// document, making repeated runs incremental.
    pub cache_path: Option<PathBuf>,
}

pub fn classify(p: Prime, dim: usize, options: &ClassifyOptions) -> Result<ClassTable> {
    let start = Instant::now();
    let relations: Vec<LinearRelation> = enumerate_relations(p, dim)?.collect();
    let cache = match &options.cache_path {
        Some(path) => load_cache(path)?,
        None => BTreeMap::new(),
    };

    let label_all = || -> Vec<(SzymClassLabel, RelationDoc)> {
        relations
            .par_iter()
            .map(|rel| {
                let doc = rel.to_document();
                let label = cache.get(&doc.to_json()).cloned().unwrap_or_else(|| {
                    szym_label(&EndoObject::new(rel.clone()).expect("endorelation by construction"))
                });
                (label, doc)
            })
            .collect()
    };
    let mut labeled = match options.workers {
        None => label_all(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("worker pool construction")
            .install(label_all),
    };

    if let Some(path) = &options.cache_path {
        let mut updated = cache.clone();
        for (label, doc) in &labeled {
            updated.insert(doc.to_json(), label.clone());
        }
        if updated.len() != cache.len() {
            save_cache(path, &updated)?;
        }
    }

    let total_relations = labeled.len();
    if options.include_zero_object {
        let zero = EndoObject::zero_object(p);
        labeled.push((szym_label(&zero), zero.alpha().to_document()));
    }

    // Label-keyed merge; the map fold is associative, so any sharding of
    // the labeled stream would produce the same table.
    let mut by_label: BTreeMap<SzymClassLabel, Vec<RelationDoc>> = BTreeMap::new();
    for (label, doc) in labeled {
        by_label.entry(label).or_default().push(doc);
    }
    let classes: Vec<ClassEntry> = by_label
        .into_iter()
        .map(|(label, members)| ClassEntry {
            label,
            size: members.len(),
            members,
        })
        .collect();

    Ok(ClassTable {
        p: u64::from(p.value()),
        dim,
        total_relations,
        include_zero_object: options.include_zero_object,
        class_count: classes.len(),
        classes,
        elapsed: start.elapsed(),
    })
}

type Cache = BTreeMap<String, SzymClassLabel>;

fn load_cache(path: &Path) -> Result<Cache> {
    if !path.exists() {
        return Ok(Cache::new());
    }
    let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn save_cache(path: &Path, cache: &Cache) -> Result<()> {
    let text = serde_json::to_string(cache)?;
    std::fs::write(path, text).map_err(|e| crate::Error::io(path, e))
}

pub fn export_json(table: &ClassTable, out: &mut dyn Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, table)?;
    out.write_all(b"\n")
}

/// CSV rows, one per class: `label_dim,invariant_factors,class_size,members`.
pub fn export_csv(table: &ClassTable, out: &mut dyn Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label_dim", "invariant_factors", "class_size", "members"])?;
    for class in &table.classes {
        let factors = serde_json::to_string(&class.label.factors().to_coeff_lists())?;
        let members: Vec<&Vec<Vec<u64>>> = class.members.iter().map(|m| &m.generators).collect();
        w.write_record([
            class.label.dim().to_string(),
            factors,
            class.size.to_string(),
            serde_json::to_string(&members)?,
        ])?;
    }
    w.flush()
}

/// DOT digraph: one cluster per class, one node per relation labeled by
/// its generator list.
pub fn export_dot(table: &ClassTable, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "digraph szym_classes {{")?;
    writeln!(
        out,
        "  label=\"endorelations on GF({})^{} by shift-equivalence class\";",
        table.p, table.dim
    )?;
    for (ci, class) in table.classes.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{ci} {{")?;
        let factors = serde_json::to_string(&class.label.factors().to_coeff_lists())?;
        writeln!(
            out,
            "    label=\"dim={} invariant_factors={}\";",
            class.label.dim(),
            factors
        )?;
        for (ri, member) in class.members.iter().enumerate() {
            let gens = serde_json::to_string(&member.generators)?;
            writeln!(out, "    c{ci}_r{ri} [label=\"{gens}\"];")?;
        }
        writeln!(out, "  }}")?;
    }
    writeln!(out, "}}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::subspace_count;

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn relation_census_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let count = enumerate_relations(gf(p), 1).unwrap().count();
            assert_eq!(count as u64, p + 3, "census over GF({p})");
        }
        assert_eq!(enumerate_relations(gf(2), 2).unwrap().count(), 67);
    }

    #[test]
    fn census_for_p3_lists_the_expected_relations() {
        let rels: Vec<LinearRelation> = enumerate_relations(gf(3), 1).unwrap().collect();
        let p = gf(3);
        let expected = [
            LinearRelation::bottom(p, 1, 1),
            LinearRelation::from_matrix(
                &crate::matrix::Matrix::from_int_rows(p, 1, &[vec![0]]).unwrap(),
            ),
            LinearRelation::from_matrix(
                &crate::matrix::Matrix::from_int_rows(p, 1, &[vec![0]]).unwrap(),
            )
            .inverse(),
            LinearRelation::identity(p, 1),
            LinearRelation::from_matrix(
                &crate::matrix::Matrix::from_int_rows(p, 1, &[vec![2]]).unwrap(),
            ),
            LinearRelation::top(p, 1, 1),
        ];
        for e in &expected {
            assert!(rels.contains(e), "missing {e:?}");
        }
        assert_eq!(rels.len(), expected.len());
    }

    #[test]
    fn classify_gf3_dim1() {
        let table = classify(gf(3), 1, &ClassifyOptions::default()).unwrap();
        assert_eq!(table.total_relations, 6);
        assert_eq!(table.class_count, 3);
        let mut sizes: Vec<usize> = table.classes.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 4]);

        // The size-4 class is the degenerate one and absorbs (0, id_0).
        let with_zero = classify(
            gf(3),
            1,
            &ClassifyOptions {
                include_zero_object: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(with_zero.class_count, 3);
        let degenerate = with_zero
            .classes
            .iter()
            .find(|c| c.label.dim() == 0)
            .unwrap();
        assert_eq!(degenerate.size, 5);
        let gens: Vec<&Vec<Vec<u64>>> = degenerate.members.iter().map(|m| &m.generators).collect();
        let top: Vec<Vec<u64>> = vec![vec![1, 0], vec![0, 1]];
        let bottom: Vec<Vec<u64>> = vec![];
        let zero_map: Vec<Vec<u64>> = vec![vec![1, 0]];
        let zero_map_inverse: Vec<Vec<u64>> = vec![vec![0, 1]];
        let zero_object: Vec<Vec<u64>> = vec![];
        for expected in [&top, &bottom, &zero_map, &zero_map_inverse, &zero_object] {
            assert!(
                gens.contains(&expected),
                "degenerate class missing {expected:?}"
            );
        }
    }

    #[test]
    fn classify_gf2_dim1_and_dim0() {
        let table = classify(gf(2), 1, &ClassifyOptions::default()).unwrap();
        assert_eq!(table.total_relations, 5);
        assert_eq!(table.class_count, 2);
        let mut sizes: Vec<usize> = table.classes.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 4]);

        let trivial = classify(gf(2), 0, &ClassifyOptions::default()).unwrap();
        assert_eq!(trivial.class_count, 1);
        assert_eq!(trivial.total_relations, 1);
    }

    #[test]
    fn scalar_labels_are_pairwise_distinct() {
        for p in [2u64, 3, 5, 7] {
            let table = classify(gf(p), 1, &ClassifyOptions::default()).unwrap();
            assert_eq!(table.total_relations as u64, p + 3);
            // Degenerate quadruple plus one singleton per nonzero scalar.
            let singletons = table.classes.iter().filter(|c| c.size == 1).count();
            assert_eq!(singletons as u64, p - 1);
            assert!(table.classes.iter().any(|c| c.size == 4));
            let labels: std::collections::BTreeSet<_> = table
                .classes
                .iter()
                .map(|c| serde_json::to_string(&c.label).unwrap())
                .collect();
            assert_eq!(labels.len(), table.class_count, "labels must be distinct");
        }
    }

    #[test]
    fn class_sizes_sum_to_relation_count() {
        for (p, n) in [(2u64, 1usize), (2, 2), (3, 1), (5, 1)] {
            let table = classify(gf(p), n, &ClassifyOptions::default()).unwrap();
            let sum: usize = table.classes.iter().map(|c| c.size).sum();
            assert_eq!(sum, table.total_relations);
            assert_eq!(table.total_relations as u128, subspace_count(gf(p), 2 * n));
        }
    }

    #[test]
    fn worker_count_never_changes_the_output() {
        let mut outputs = Vec::new();
        for workers in [None, Some(1), Some(3), Some(8)] {
            let table = classify(
                gf(2),
                2,
                &ClassifyOptions {
                    workers,
                    ..Default::default()
                },
            )
            .unwrap();
            let mut buf = Vec::new();
            export_json(&table, &mut buf).unwrap();
            outputs.push(buf);
        }
        for other in &outputs[1..] {
            assert_eq!(&outputs[0], other, "classification must be deterministic");
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("labels.json");
        let opts = ClassifyOptions {
            cache_path: Some(cache.clone()),
            ..Default::default()
        };
        let first = classify(gf(3), 1, &opts).unwrap();
        assert!(cache.exists());
        let second = classify(gf(3), 1, &opts).unwrap();
        let render = |t: &ClassTable| {
            let mut buf = Vec::new();
            export_json(t, &mut buf).unwrap();
            buf
        };
        assert_eq!(render(&first), render(&second));
    }

    #[test]
    fn exports_have_the_documented_shape() {
        let table = classify(
            gf(3),
            1,
            &ClassifyOptions {
                include_zero_object: true,
                ..Default::default()
            },
        )
        .unwrap();

        let mut csv_buf = Vec::new();
        export_csv(&table, &mut csv_buf).unwrap();
        let text = String::from_utf8(csv_buf).unwrap();
        assert!(text.starts_with("label_dim,invariant_factors,class_size,members"));
        assert_eq!(text.lines().count(), 1 + table.class_count);

        let mut dot_buf = Vec::new();
        export_dot(&table, &mut dot_buf).unwrap();
        let dot = String::from_utf8(dot_buf).unwrap();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("subgraph cluster_").count(), table.class_count);
        let nodes: usize = table.classes.iter().map(|c| c.size).sum();
        assert_eq!(dot.matches("label=\"[").count(), nodes);

        let mut json_buf = Vec::new();
        export_json(&table, &mut json_buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&json_buf).unwrap();
        assert_eq!(value["class_count"], 3);
        assert!(
            value.get("elapsed").is_none(),
            "timing stays out of exports"
        );
    }
}
