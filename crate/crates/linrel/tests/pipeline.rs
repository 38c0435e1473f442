//! Cross-module flows: document round trips through reduction and
//! labeling, and consistency between the classifier and the deciders.

use linrel::classify::{classify, ClassifyOptions};
use linrel::field::Prime;
use linrel::leray::{leray, szym_witness_le, szym_witness_lm, EndoObject};
use linrel::relation::{LinearRelation, RelationDoc};
use linrel::szymczak::{szym_equiv, szym_label};

fn gf(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn object_from_json(text: &str) -> EndoObject {
    let doc = RelationDoc::from_json(text).unwrap();
    EndoObject::new(LinearRelation::from_document(&doc).unwrap()).unwrap()
}

#[test]
fn document_to_label_round_trip() {
    let obj =
        object_from_json(r#"{"p":7,"dim_dom":2,"dim_cod":2,"generators":[[1,0,3,0],[0,1,0,3]]}"#);
    let form = leray(&obj);
    assert_eq!(form.dim(), 2);
    // Scaling by 3 in both coordinates: invariant factors x-3, x-3.
    assert_eq!(
        form.factors().to_coeff_lists(),
        vec![vec![4, 1], vec![4, 1]]
    );

    let label = szym_label(&obj);
    let json = serde_json::to_string(&label).unwrap();
    let parsed: linrel::szymczak::SzymClassLabel = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, label);
}

#[test]
fn classifier_classes_agree_with_the_pairwise_decider() {
    let p = gf(3);
    let table = classify(p, 1, &ClassifyOptions::default()).unwrap();
    let members: Vec<(usize, EndoObject)> = table
        .classes
        .iter()
        .enumerate()
        .flat_map(|(ci, class)| {
            class.members.iter().map(move |doc| {
                let rel = LinearRelation::from_document(doc).unwrap();
                (ci, EndoObject::new(rel).unwrap())
            })
        })
        .collect();
    for (ci, a) in &members {
        for (cj, b) in &members {
            assert_eq!(
                szym_equiv(a, b).unwrap(),
                ci == cj,
                "table partition must match the decider"
            );
        }
    }
}

#[test]
fn witnesses_connect_an_object_to_its_reduced_form() {
    // The composite of the two reduction witnesses lands in the class of
    // the full reduction.
    let obj = object_from_json(
        r#"{"p":2,"dim_dom":3,"dim_cod":3,"generators":[[1,0,0,0,1,0],[0,1,0,0,0,0],[0,0,1,1,0,1]]}"#,
    );
    let quotient_witness = szym_witness_lm(&obj);
    assert!(quotient_witness.all_hold(&obj));
    let quotient = quotient_witness.reduced.clone();
    let restriction_witness = szym_witness_le(&quotient);
    assert!(restriction_witness.all_hold(&quotient));
    let reduced = restriction_witness.reduced.clone();
    assert!(reduced.alpha().is_isomorphism());
    assert!(szym_equiv(&obj, &reduced).unwrap());
    assert_eq!(szym_label(&reduced).dim(), leray(&obj).dim());
}

#[test]
fn reduction_works_at_the_largest_supported_modulus() {
    // 65521 is the largest prime below 2^16; products of residues still
    // fit comfortably in the 64-bit intermediates.
    let obj = object_from_json(r#"{"p":65521,"dim_dom":1,"dim_cod":1,"generators":[[1,12345]]}"#);
    let form = leray(&obj);
    assert_eq!(form.dim(), 1);
    assert_eq!(form.matrix().to_int_rows(), vec![vec![12345]]);
    assert_eq!(
        form.factors().to_coeff_lists(),
        vec![vec![65521 - 12345, 1]]
    );
    assert_eq!(szym_label(&obj).dim(), 1);
}

#[test]
fn labels_separate_scalings_across_dimensions() {
    // A 1-dim scaling and the 2-dim diagonal with the same scalar are
    // inequivalent; dimensions of the canonical forms differ.
    let one = object_from_json(r#"{"p":5,"dim_dom":1,"dim_cod":1,"generators":[[1,2]]}"#);
    let two =
        object_from_json(r#"{"p":5,"dim_dom":2,"dim_cod":2,"generators":[[1,0,2,0],[0,1,0,2]]}"#);
    assert!(!szym_equiv(&one, &two).unwrap());
    assert_eq!(szym_label(&one).dim(), 1);
    assert_eq!(szym_label(&two).dim(), 2);
}
