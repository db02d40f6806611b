//! The ladder quiver of a partial flag variety and its vertex labels.

use std::collections::BTreeMap;

use serde::Serialize;

use super::expr::{Laurent, Monomial, RationalExpr, Symbol};
use crate::combinatorics::{FlagShape, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexKind {
    Source,
    /// The vertex above the top-left cell of block `i + 1`, labeled `q_1...q_i`.
    Corner(usize),
    Sink,
    /// Cell `(j, k)` of block `i`, counted from the block's top-left cell starting at 1.
    Cell {
        block: usize,
        j: usize,
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
    pub kind: VertexKind,
}

/// Vertices in global coordinates, rows from 0 and columns from 1, with arrows pointing
/// right and down between neighbouring vertices.
#[derive(Debug, Clone)]
pub struct LadderQuiver {
    shape: FlagShape,
    vertices: Vec<Vertex>,
    arrows: Vec<(usize, usize)>,
}

fn q_prefix(k: usize) -> Monomial {
    (1..=k).fold(Monomial::one(), |m, l| m.mul(&Monomial::var(Symbol::Q(l), 1)))
}

impl LadderQuiver {
    pub fn build(shape: &FlagShape) -> LadderQuiver {
        let n = shape.n();
        let r1 = shape.r(1);
        let rho = shape.rho();
        let mut vs = vec![Vertex { row: 0, col: 1, kind: VertexKind::Source }];
        for i in 1..=rho {
            let top = r1 - shape.r(i) + 1;
            let left = n - shape.r(i - 1) + 1;
            for j in 1..=shape.r(i) {
                for k in 1..=shape.r(i - 1) - shape.r(i) {
                    vs.push(Vertex { row: top + j - 1, col: left + k - 1, kind: VertexKind::Cell { block: i, j, k } });
                }
            }
            if i < rho {
                vs.push(Vertex { row: r1 - shape.r(i + 1), col: n - shape.r(i) + 1, kind: VertexKind::Corner(i) });
            }
        }
        vs.push(Vertex { row: r1, col: n - shape.r(rho) + 1, kind: VertexKind::Sink });
        vs.sort();
        let at: BTreeMap<(usize, usize), usize> = vs.iter().enumerate().map(|(x, v)| ((v.row, v.col), x)).collect();
        let mut arrows = Vec::new();
        for (x, v) in vs.iter().enumerate() {
            for next in [(v.row, v.col + 1), (v.row + 1, v.col)] {
                if let Some(&y) = at.get(&next) {
                    arrows.push((x, y));
                }
            }
        }
        LadderQuiver { shape: shape.clone(), vertices: vs, arrows }
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Arrows as `(tail, head)` indices into `vertices`.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// The EHX variable at a vertex: 1 at the source, `q_1...q_i` at corners and the sink.
    pub fn ehx_variable(&self, v: &Vertex) -> RationalExpr {
        match v.kind {
            VertexKind::Source => RationalExpr::one(),
            VertexKind::Corner(i) => RationalExpr::monomial(q_prefix(i)),
            VertexKind::Sink => RationalExpr::monomial(q_prefix(self.shape.rho())),
            VertexKind::Cell { .. } => RationalExpr::var(Symbol::Z(v.row, v.col)),
        }
    }

    /// The flag-variety label `q_1...q_{i-1} p^i_{k^j} / p^i_{(k-1)^(j-1)}`, constants elsewhere.
    pub fn flag_label(&self, v: &Vertex) -> RationalExpr {
        match v.kind {
            VertexKind::Cell { block, j, k } => {
                let m = q_prefix(block - 1)
                    .mul(&Monomial::var(Symbol::P(block, Partition::rectangle(j, k)), 1))
                    .mul(&Monomial::var(Symbol::P(block, Partition::rectangle(j - 1, k - 1)), -1));
                RationalExpr::monomial(m)
            }
            _ => self.ehx_variable(v),
        }
    }

    /// Numerator and denominator rectangles of the Grassmannian label at this position, read in
    /// the quiver of `Gr(infinity, r_1)`; the source has none.
    pub fn grassmannian_label(&self, v: &Vertex) -> Option<(Partition, Partition)> {
        if v.kind == VertexKind::Source {
            return None;
        }
        Some((Partition::rectangle(v.row, v.col), Partition::rectangle(v.row - 1, v.col - 1)))
    }

    fn arrow_sum(&self, label: impl Fn(&Vertex) -> RationalExpr) -> RationalExpr {
        let mut w = RationalExpr::zero();
        for &(t, h) in &self.arrows {
            let term = label(&self.vertices[h]).div(&label(&self.vertices[t])).expect("labels are nonzero monomials");
            w = w.add(&term);
        }
        w
    }

    pub fn ehx_superpotential(&self) -> Laurent {
        self.arrow_sum(|v| self.ehx_variable(v)).as_laurent().cloned().expect("monomial labels")
    }

    /// The EHX sum with every vertex variable replaced by its flag label.
    pub fn rectangles_chart_expansion(&self) -> Laurent {
        self.arrow_sum(|v| self.flag_label(v)).as_laurent().cloned().expect("monomial labels")
    }
}
