//! Graphviz (DOT) rendering of spectra as Hasse diagrams.
//!
//! Only covering edges are drawn (an edge `a -> b` means `b` covers `a`),
//! with `rankdir=BT` so larger primes sit higher.  Base-lift nodes are
//! boxes, source-trace nodes are ellipses, and maximal elements are drawn
//! with a double border.

use std::fmt::Write as _;

use crate::amalgam::{ClassifiedAmalgam, PrimeTag};
use crate::poset::{AmalgamNode, AmalgamPoset, SpectralPoset};

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `strict_le(i, j)` must be an irreflexive partial order; returns the
/// covering pairs `(i, j)` with nothing strictly between.
fn covering_pairs(n: usize, strict_le: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !strict_le(i, j) {
                continue;
            }
            let skipped = (0..n).any(|k| strict_le(i, k) && strict_le(k, j));
            if !skipped {
                covers.push((i, j));
            }
        }
    }
    covers
}

fn render(
    name: &str,
    n: usize,
    label: impl Fn(usize) -> String,
    shape: impl Fn(usize) -> &'static str,
    maximal: impl Fn(usize) -> bool,
    strict_le: impl Fn(usize, usize) -> bool,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [fontname=\"monospace\"];");
    for i in 0..n {
        let peripheries = if maximal(i) { 2 } else { 1 };
        let _ = writeln!(
            out,
            "  n{i} [label=\"{}\", shape={}, peripheries={peripheries}];",
            escape(&label(i)),
            shape(i),
        );
    }
    for (i, j) in covering_pairs(n, strict_le) {
        let _ = writeln!(out, "  n{i} -> n{j};");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a bare poset.
pub fn poset_dot(p: &SpectralPoset) -> String {
    render(
        "poset",
        p.len(),
        |i| p.label(i).to_string(),
        |_| "box",
        |i| p.is_maximal(i),
        |i, j| i != j && p.le(i, j),
    )
}

/// Hasse diagram of an assembled carrier poset, distinguishing the two
/// node families.
pub fn amalgam_poset_dot(a: &AmalgamPoset) -> String {
    let p = a.poset();
    render(
        "carrier",
        p.len(),
        |i| p.label(i).to_string(),
        |i| match a.node(i) {
            AmalgamNode::Type1(_) => "box",
            AmalgamNode::Type2(_) => "ellipse",
        },
        |i| p.is_maximal(i),
        |i, j| i != j && p.le(i, j),
    )
}

/// Hasse diagram of a classified concrete spectrum, labeled by the prime's
/// elements.
pub fn classified_dot(c: &ClassifiedAmalgam) -> String {
    let tagged = c.tagged();
    let le = |i: usize, j: usize| tagged[i].ideal.is_subset(&tagged[j].ideal);
    render(
        c.amalgam().carrier().name(),
        tagged.len(),
        |i| match tagged[i].tag {
            PrimeTag::Type1 => format!("T1:{}", tagged[i].ideal),
            PrimeTag::Type2 => format!("T2:{}", tagged[i].ideal),
        },
        |i| match tagged[i].tag {
            PrimeTag::Type1 => "box",
            PrimeTag::Type2 => "ellipse",
        },
        |i| c.carrier_spec().is_max(i),
        |i, j| i != j && le(i, j),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{classify_spectrum, duplicate};
    use crate::ideal::ideal_generate;
    use crate::limits::Limits;
    use crate::poset::SpectralPoset;
    use crate::ring::make_zn;

    #[test]
    fn chain_renders_covering_edges_only() {
        let p = SpectralPoset::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        let dot = poset_dot(&p);
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("n1 -> n2;"));
        // The transitive edge a -> c is not a covering edge.
        assert!(!dot.contains("n0 -> n2;"));
        // Only the top is maximal.
        assert_eq!(dot.matches("peripheries=2").count(), 1);
    }

    #[test]
    fn classified_diagram_marks_families_and_maximals() {
        let z6 = make_zn(6).unwrap();
        let a = duplicate(&z6, &ideal_generate(&z6, &[2])).unwrap();
        let c = classify_spectrum(a, &Limits::default()).unwrap();
        let dot = classified_dot(&c);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert_eq!(dot.matches("shape=ellipse").count(), 1);
        // All three primes are maximal here, and incomparable.
        assert_eq!(dot.matches("peripheries=2").count(), 3);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn labels_are_escaped() {
        let p = SpectralPoset::from_edges(vec!["a\"b".into()], &[]).unwrap();
        let dot = poset_dot(&p);
        assert!(dot.contains("a\\\"b"));
    }
}
