use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{HyperbolicDomain, RasterGrid};
use crate::{Error, Point, Result};

/// 16-connected stencil: the 8 king moves plus the 8 knight moves.
const STENCIL: [(i64, i64); 16] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (1, 2),
    (2, 1),
    (-1, 2),
    (-2, 1),
    (1, -2),
    (2, -1),
    (-1, -2),
    (-2, -1),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QhEstimate {
    pub value: f64,
    /// Grid spacing the estimate was computed on.
    pub cell_size: f64,
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    cost: f64,
    node: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap
        other.cost.total_cmp(&self.cost)
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest paths of the quasi-hyperbolic density `1 / dist(., boundary)` on a
/// weighted grid graph. Edge weight is the Euclidean edge length times the mean
/// of the endpoint densities.
#[derive(Debug, Clone)]
pub struct QuasiHyperbolicSolver {
    domain: HyperbolicDomain,
    grid: RasterGrid,
    inv_distance: Vec<f64>,
}

impl QuasiHyperbolicSolver {
    /// Disc and annulus domains are rasterized on `[-1, 1]^2` with `resolution`
    /// cells per side and keep their exact boundary distance; raster domains
    /// use their own grid and ignore `resolution`.
    pub fn new(domain: &HyperbolicDomain, resolution: usize) -> Result<Self> {
        let grid = match domain {
            HyperbolicDomain::Raster(g) => g.clone(),
            _ => {
                if resolution < 4 {
                    return Err(Error::precondition("grid resolution must be at least 4"));
                }
                RasterGrid::from_predicate(resolution, -1.0, 1.0, |p| domain.contains(p))?
            }
        };
        let mut inv_distance = vec![0.0; grid.width() * grid.height()];
        for row in 0..grid.height() {
            for col in 0..grid.width() {
                let i = grid.index(col, row);
                if grid.is_occupied(col, row) {
                    let d = match domain {
                        HyperbolicDomain::Raster(_) => grid.boundary_distances()[i],
                        _ => domain.boundary_distance(grid.center(col, row)),
                    };
                    if d > 0.0 {
                        inv_distance[i] = 1.0 / d;
                    }
                }
            }
        }
        Ok(Self {
            domain: domain.clone(),
            grid,
            inv_distance,
        })
    }

    pub fn cell_size(&self) -> f64 {
        self.grid.cell_size()
    }

    fn node_for(&self, p: Point) -> Result<(usize, f64)> {
        self.domain.require(p)?;
        let d = self.domain.boundary_distance(p);
        if !(d > 0.0) {
            return Err(Error::domain(format!("zero boundary distance at {p}")));
        }
        let (col, row) = self
            .grid
            .cell_of(p)
            .ok_or_else(|| Error::domain(format!("{p} outside the grid")))?;
        let i = self.grid.index(col, row);
        if self.inv_distance[i] == 0.0 {
            return Err(Error::domain(format!("{p} falls in an unoccupied cell")));
        }
        let c = self.grid.center(col, row);
        let link = (p - c).norm() * 0.5 * (1.0 / d + self.inv_distance[i]);
        Ok((i, link))
    }

    fn neighbors(&self, node: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let w = self.grid.width() as i64;
        let h = self.grid.height() as i64;
        let (col, row) = ((node as i64) % w, (node as i64) / w);
        let cell = self.grid.cell_size();
        let open = move |c: i64, r: i64| -> bool {
            c >= 0 && r >= 0 && c < w && r < h && self.inv_distance[(r * w + c) as usize] > 0.0
        };
        STENCIL.iter().filter_map(move |&(dc, dr)| {
            let (c, r) = (col + dc, row + dr);
            if !open(c, r) {
                return None;
            }
            // cells the straight edge passes through must be inside as well
            let passes = match (dc.abs(), dr.abs()) {
                (1, 1) => open(col + dc, row) && open(col, row + dr),
                (1, 2) => open(col, row + dr / 2) && open(col + dc, row + dr / 2),
                (2, 1) => open(col + dc / 2, row) && open(col + dc / 2, row + dr),
                _ => true,
            };
            if !passes {
                return None;
            }
            let j = (r * w + c) as usize;
            let len = cell * ((dc * dc + dr * dr) as f64).sqrt();
            Some((j, len * 0.5 * (self.inv_distance[node] + self.inv_distance[j])))
        })
    }

    /// Single-source costs to every grid node, stopping early once `stop` is settled.
    fn dijkstra(&self, source: usize, source_cost: f64, stop: Option<usize>) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.inv_distance.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = source_cost;
        heap.push(State {
            cost: source_cost,
            node: source,
        });
        while let Some(State { cost, node }) = heap.pop() {
            if cost > dist[node] {
                continue;
            }
            if Some(node) == stop {
                break;
            }
            for (next, w) in self.neighbors(node) {
                let c = cost + w;
                if c < dist[next] {
                    dist[next] = c;
                    heap.push(State { cost: c, node: next });
                }
            }
        }
        dist
    }

    pub fn distance(&self, z: Point, w: Point) -> Result<QhEstimate> {
        let (a, link_a) = self.node_for(z)?;
        let (b, link_b) = self.node_for(w)?;
        if z == w {
            return Ok(self.estimate(0.0));
        }
        let dist = self.dijkstra(a, link_a, Some(b));
        let value = dist[b];
        if !value.is_finite() {
            return Err(Error::Unreachable);
        }
        Ok(self.estimate(value + link_b))
    }

    /// Distances from `z` to each of `targets`, sharing one shortest-path sweep.
    pub fn distances_from(&self, z: Point, targets: &[Point]) -> Result<Vec<QhEstimate>> {
        let (a, link_a) = self.node_for(z)?;
        let dist = self.dijkstra(a, link_a, None);
        targets
            .iter()
            .map(|&w| {
                if w == z {
                    return Ok(self.estimate(0.0));
                }
                let (b, link_b) = self.node_for(w)?;
                if !dist[b].is_finite() {
                    return Err(Error::Unreachable);
                }
                Ok(self.estimate(dist[b] + link_b))
            })
            .collect()
    }

    fn estimate(&self, value: f64) -> QhEstimate {
        QhEstimate {
            value,
            cell_size: self.grid.cell_size(),
        }
    }
}

/// One-shot quasi-hyperbolic distance; see [`QuasiHyperbolicSolver::new`] for
/// the meaning of `resolution`.
pub fn quasi_hyperbolic_distance(
    domain: &HyperbolicDomain,
    z: Point,
    w: Point,
    resolution: usize,
) -> Result<QhEstimate> {
    QuasiHyperbolicSolver::new(domain, resolution)?.distance(z, w)
}
