use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{affine_diagram, FiniteType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassImage {
    pub label: &'static str,
    pub cycle_type: Vec<u32>,
    pub order: u32,
    pub node: usize,
    pub mark: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEmbedding {
    pub k: u32,
    pub target: FiniteType,
    pub images: Vec<ClassImage>,
    pub omitted_nodes: Vec<usize>,
    pub omitted_marks: Vec<u32>,
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn lcm_all(v: &[u32]) -> u32 {
    v.iter().fold(1, |a, &b| num_integer::lcm(a, b))
}

/// Conjugacy classes of `S_k` placed on the nodes of `G2^a`, `F4^a`, `E8^a`
/// (`k = 3, 4, 5`) so that element order equals the mark.
pub fn class_order_embedding(k: u32) -> Result<ClassEmbedding> {
    let (target, table): (&str, &[(&'static str, &[u32], usize)]) = match k {
        3 => ("G2", &[("1", &[1, 1, 1], 0), ("g2'", &[2, 1], 2), ("g3", &[3], 1)]),
        4 => (
            "F4",
            &[("1", &[1, 1, 1, 1], 0), ("g2", &[2, 1, 1], 1), ("g2'", &[2, 2], 4), ("g3", &[3, 1], 2), ("g4", &[4], 3)],
        ),
        5 => (
            "E8",
            &[
                ("1", &[1, 1, 1, 1, 1], 0),
                ("g2", &[2, 1, 1, 1], 8),
                ("g2'", &[2, 2, 1], 1),
                ("g3", &[3, 1, 1], 7),
                ("g4", &[4, 1], 6),
                ("g5", &[5], 5),
                ("g6", &[3, 2], 4),
            ],
        ),
        _ => return Err(Error::InvalidArgument(format!("k must be 3, 4 or 5, got {k}"))),
    };
    let target: FiniteType = target.parse()?;
    let d = affine_diagram(target);
    let images: Vec<ClassImage> = table
        .iter()
        .map(|&(label, ct, node)| ClassImage {
            label,
            cycle_type: ct.to_vec(),
            order: lcm_all(ct),
            node,
            mark: d.mark(node),
        })
        .collect();

    let mut classes: Vec<Vec<u32>> = images.iter().map(|i| i.cycle_type.clone()).collect();
    classes.sort();
    let mut all = partitions(k, k);
    all.sort();
    let mut nodes: Vec<usize> = images.iter().map(|i| i.node).collect();
    nodes.sort_unstable();
    nodes.dedup();
    if classes != all || nodes.len() != images.len() || images.iter().any(|i| i.order != i.mark) {
        return Err(Error::Classification(format!("class embedding for S_{k} is inconsistent")));
    }
    let omitted_nodes: Vec<usize> = d.nodes().filter(|s| !nodes.contains(s)).collect();
    let omitted_marks = omitted_nodes.iter().map(|&s| d.mark(s)).collect();
    Ok(ClassEmbedding { k, target, images, omitted_nodes, omitted_marks })
}
