use std::fmt::Write as _;

use crate::{Error, Point, Result};

/// Occupancy grid with the Euclidean distance from each occupied cell center
/// to the nearest unoccupied cell center (cells beyond the grid count as
/// unoccupied).
///
/// Cell `(col, row)` covers `origin + cell_size * ([col, col+1) x [row, row+1))`;
/// row 0 is the first data line of the text format.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterGrid {
    width: usize,
    height: usize,
    cell_size: f64,
    origin: Point,
    occupied: Vec<bool>,
    boundary_distance: Vec<f64>,
}

impl RasterGrid {
    pub fn from_mask(width: usize, height: usize, cell_size: f64, origin: Point, occupied: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::domain("raster must have at least one cell"));
        }
        if !(cell_size > 0.0 && cell_size.is_finite()) {
            return Err(Error::domain(format!("cell size {cell_size} must be positive")));
        }
        if occupied.len() != width * height {
            return Err(Error::domain(format!(
                "mask has {} cells, expected {}",
                occupied.len(),
                width * height
            )));
        }
        let boundary_distance = distance_transform(width, height, &occupied)
            .into_iter()
            .map(|d2| d2.sqrt() * cell_size)
            .collect();
        Ok(Self {
            width,
            height,
            cell_size,
            origin,
            occupied,
            boundary_distance,
        })
    }

    /// Rasterizes `inside` on the square `[lo, hi]^2` with `n` cells per side.
    pub fn from_predicate(n: usize, lo: f64, hi: f64, inside: impl Fn(Point) -> bool) -> Result<Self> {
        let cell = (hi - lo) / n as f64;
        let origin = Point::new(lo, lo);
        let mut mask = Vec::with_capacity(n * n);
        for row in 0..n {
            for col in 0..n {
                let c = origin + Point::new((col as f64 + 0.5) * cell, (row as f64 + 0.5) * cell);
                mask.push(inside(c));
            }
        }
        Self::from_mask(n, n, cell, origin, mask)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn occupied(&self) -> &[bool] {
        &self.occupied
    }

    pub fn boundary_distances(&self) -> &[f64] {
        &self.boundary_distance
    }

    #[inline]
    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.width + col
    }

    pub fn center(&self, col: usize, row: usize) -> Point {
        self.origin + Point::new((col as f64 + 0.5) * self.cell_size, (row as f64 + 0.5) * self.cell_size)
    }

    pub fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        let rel = (p - self.origin) / self.cell_size;
        if !(rel.re >= 0.0 && rel.im >= 0.0) {
            return None;
        }
        let (col, row) = (rel.re.floor() as usize, rel.im.floor() as usize);
        (col < self.width && row < self.height).then_some((col, row))
    }

    pub fn is_occupied(&self, col: usize, row: usize) -> bool {
        self.occupied[self.index(col, row)]
    }

    pub fn contains(&self, p: Point) -> bool {
        self.cell_of(p).map(|(c, r)| self.is_occupied(c, r)).unwrap_or(false)
    }

    pub fn boundary_distance_at(&self, p: Point) -> f64 {
        self.cell_of(p)
            .map(|(c, r)| self.boundary_distance[self.index(c, r)])
            .unwrap_or(0.0)
    }

    /// Parses the `raster <width> <height> <cell_size>` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty raster file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "raster" {
            return Err(Error::Parse(format!(
                "expected `raster <width> <height> <cell_size>`, got `{header}`"
            )));
        }
        let parse_usize = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad dimension `{s}`: {e}")))
        };
        let width = parse_usize(fields[1])?;
        let height = parse_usize(fields[2])?;
        let cell_size: f64 = fields[3]
            .parse()
            .map_err(|e| Error::Parse(format!("bad cell size `{}`: {e}", fields[3])))?;

        let mut mask = Vec::with_capacity(width * height);
        for (row, line) in lines.enumerate() {
            let line = line.trim();
            if line.len() != width {
                return Err(Error::Parse(format!(
                    "row {row} has {} cells, expected {width}",
                    line.len()
                )));
            }
            for ch in line.chars() {
                mask.push(match ch {
                    '1' => true,
                    '0' => false,
                    other => return Err(Error::Parse(format!("row {row}: unexpected `{other}`"))),
                });
            }
        }
        if mask.len() != width * height {
            return Err(Error::Parse(format!(
                "expected {height} rows, found {}",
                mask.len() / width.max(1)
            )));
        }
        Self::from_mask(width, height, cell_size, Point::new(0.0, 0.0), mask)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("raster {} {} {}\n", self.width, self.height, self.cell_size);
        for row in 0..self.height {
            for col in 0..self.width {
                out.push(if self.is_occupied(col, row) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        let filled = self.occupied.iter().filter(|&&b| b).count();
        let _ = write!(
            s,
            "{}x{} cells of {} ({} occupied)",
            self.width, self.height, self.cell_size, filled
        );
        s
    }
}

/// Exact squared Euclidean distance transform (in cell units) to the nearest
/// unoccupied cell, computed with the lower-envelope-of-parabolas method on a
/// grid padded by one unoccupied cell on every side.
pub(crate) fn distance_transform(width: usize, height: usize, occupied: &[bool]) -> Vec<f64> {
    let (pw, ph) = (width + 2, height + 2);
    let mut f = vec![0.0_f64; pw * ph];
    for row in 0..height {
        for col in 0..width {
            if occupied[row * width + col] {
                f[(row + 1) * pw + col + 1] = f64::INFINITY;
            }
        }
    }
    let mut buf_in = vec![0.0; pw.max(ph)];
    let mut buf_out = vec![0.0; pw.max(ph)];
    for col in 0..pw {
        for row in 0..ph {
            buf_in[row] = f[row * pw + col];
        }
        lower_envelope(&buf_in[..ph], &mut buf_out[..ph]);
        for row in 0..ph {
            f[row * pw + col] = buf_out[row];
        }
    }
    for row in 0..ph {
        buf_in[..pw].copy_from_slice(&f[row * pw..(row + 1) * pw]);
        lower_envelope(&buf_in[..pw], &mut buf_out[..pw]);
        f[row * pw..(row + 1) * pw].copy_from_slice(&buf_out[..pw]);
    }
    let mut out = Vec::with_capacity(width * height);
    for row in 0..height {
        for col in 0..width {
            out.push(f[(row + 1) * pw + col + 1]);
        }
    }
    out
}

fn lower_envelope(f: &[f64], d: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n];
    let mut z = vec![0.0_f64; n + 1];
    let mut k = 0usize;
    let first = match f.iter().position(|x| x.is_finite()) {
        Some(i) => i,
        None => {
            d.iter_mut().for_each(|x| *x = f64::INFINITY);
            return;
        }
    };
    v[0] = first;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in first + 1..n {
        if !f[q].is_finite() {
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] && k > 0 {
                k -= 1;
                continue;
            }
            if s <= z[k] {
                // k == 0 and the new parabola dominates everywhere
                v[0] = q;
                z[0] = f64::NEG_INFINITY;
                z[1] = f64::INFINITY;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
            }
            break;
        }
    }
    k = 0;
    for (q, out) in d.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        *out = dq * dq + f[p];
    }
}
