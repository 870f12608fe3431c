//! Deterministic disc triangulations for the lemma searches.

use std::collections::BTreeMap;

use super::complex::{Carriers, Triangulation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscKind {
    /// The standard `dim`-simplex cut into `k^dim` cells by the Freudenthal
    /// subdivision (edgewise subdivision for `dim = 2`).
    SubdividedSimplex { dim: usize, k: usize },
    /// A 2-disc whose boundary is a `boundary`-gon with the antipode
    /// `b_i <-> b_(i + boundary/2)`. `interior` is 0 (fan from `b_0`), 1 (fan
    /// from a centre) or 2 (two centres joined by an edge).
    SymmetricDisc { boundary: usize, interior: usize },
    /// A path with `edges` edges whose two endpoints are antipodal.
    Path { edges: usize },
}

#[derive(Clone, Debug)]
pub struct GeneratedDisc {
    pub triangulation: Triangulation,
    /// Present for subdivided simplices.
    pub carriers: Option<Carriers>,
}

pub fn generate_disc_triangulation(kind: DiscKind) -> Result<GeneratedDisc> {
    match kind {
        DiscKind::SubdividedSimplex { dim, k } => subdivided_simplex(dim, k),
        DiscKind::SymmetricDisc { boundary, interior } => symmetric_disc(boundary, interior),
        DiscKind::Path { edges } => path(edges),
    }
}

fn subdivided_simplex(dim: usize, k: usize) -> Result<GeneratedDisc> {
    if dim == 0 || k == 0 {
        return Err(Error::input(format!(
            "subdivided simplex needs dim >= 1 and k >= 1, got dim {dim}, k {k}"
        )));
    }
    // Lattice points k >= y_1 >= ... >= y_dim >= 0 in lexicographic order.
    let mut points: Vec<Vec<usize>> = Vec::new();
    fn fill(dim: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == dim {
            out.push(cur.clone());
            return;
        }
        for y in 0..=bound {
            cur.push(y);
            fill(dim, y, cur, out);
            cur.pop();
        }
    }
    fill(dim, k, &mut Vec::new(), &mut points);
    let index: BTreeMap<Vec<usize>, u32> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let inside = |p: &[usize]| p[0] <= k && p.windows(2).all(|w| w[0] >= w[1]);

    let mut perm: Vec<usize> = (0..dim).collect();
    let mut perms = Vec::new();
    loop {
        perms.push(perm.clone());
        let Some(i) = (1..dim).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..dim).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }

    let mut cells = Vec::new();
    for base in &points {
        for p in &perms {
            let mut cur = base.clone();
            let mut cell = vec![index[base]];
            let mut ok = true;
            for &axis in p {
                cur[axis] += 1;
                if !inside(&cur) {
                    ok = false;
                    break;
                }
                cell.push(index[&cur]);
            }
            if ok {
                cells.push(cell);
            }
        }
    }

    // barycentric coordinates k - y_1, y_1 - y_2, ..., y_dim
    let carriers: Vec<Vec<i32>> = points
        .iter()
        .map(|y| {
            let mut bary = vec![k - y[0]];
            bary.extend(y.windows(2).map(|w| w[0] - w[1]));
            bary.push(y[dim - 1]);
            bary.iter()
                .enumerate()
                .filter(|&(_, &x)| x > 0)
                .map(|(i, _)| i as i32 + 1)
                .collect()
        })
        .collect();
    let boundary: Vec<u32> = carriers
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() <= dim)
        .map(|(i, _)| i as u32)
        .collect();

    let ids = (0..points.len() as u32).collect();
    Ok(GeneratedDisc {
        triangulation: Triangulation::new(dim, ids, cells, boundary, None)?,
        carriers: Some(Carriers(carriers)),
    })
}

fn symmetric_disc(n: usize, interior: usize) -> Result<GeneratedDisc> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::input(format!(
            "symmetric disc needs an even boundary of at least 4 vertices, got {n}"
        )));
    }
    let b = |i: usize| (i % n) as u32;
    let h = n / 2;
    let cells: Vec<Vec<u32>> = match interior {
        0 => (1..n - 1).map(|i| vec![b(0), b(i), b(i + 1)]).collect(),
        1 => (0..n).map(|i| vec![n as u32, b(i), b(i + 1)]).collect(),
        2 => {
            let (c1, c2) = (n as u32, n as u32 + 1);
            let mut cells: Vec<Vec<u32>> = (0..h).map(|i| vec![c1, b(i), b(i + 1)]).collect();
            cells.extend((h..n).map(|i| vec![c2, b(i), b(i + 1)]));
            cells.push(vec![c1, c2, b(0)]);
            cells.push(vec![c1, c2, b(h)]);
            cells
        }
        _ => {
            return Err(Error::input(format!(
                "symmetric disc supports 0, 1 or 2 interior vertices, got {interior}"
            )))
        }
    };
    let ids = (0..(n + interior) as u32).collect();
    let boundary = (0..n as u32).collect();
    let antipode = (0..h).map(|i| (b(i), b(i + h))).collect();
    Ok(GeneratedDisc {
        triangulation: Triangulation::new(2, ids, cells, boundary, Some(antipode))?,
        carriers: None,
    })
}

fn path(m: usize) -> Result<GeneratedDisc> {
    if m == 0 {
        return Err(Error::input("path needs at least one edge"));
    }
    let cells = (0..m as u32).map(|i| vec![i, i + 1]).collect();
    let ids = (0..=m as u32).collect();
    let t = Triangulation::new(1, ids, cells, vec![0, m as u32], Some(vec![(0, m as u32)]))?;
    Ok(GeneratedDisc {
        triangulation: t,
        carriers: None,
    })
}
