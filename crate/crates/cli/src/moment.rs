//! ASCII moment map of the n = 2 special fiber and its regions.
//!
//! The picture lives in the `(x, y)` plane: horizontal walls `y = h`
//! (`0 <= h < k`) for `0 <= x <= k - h`, vertical walls `x = a`
//! (`1 <= a <= k`) for `-1 <= y <= k - a`, and a diagonal ray leaving each
//! staircase corner `(a, k - a)`. Unbounded directions are marked `x1`
//! (left), `x3` (down) and `x2` (diagonal).

use toric_fan::ComponentType;

pub const KINDS: [ComponentType; 4] =
    [ComponentType::AffinePlane, ComponentType::AffineLineTimesProj, ComponentType::ProjTimesProj, ComponentType::BlowUp];

/// A region of the picture, indexed by its lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
    pub kind: ComponentType,
}

/// Regions read off the walls: bounded squares are `P1 x P1`, squares cut
/// by a diagonal are blow-ups, strips are `A1 x P1`, corners are planes.
pub fn picture_cells(k: usize) -> Vec<Cell> {
    let k = k as i64;
    let mut out = Vec::new();
    let cell = |x, y, kind| Cell { x, y, kind };
    out.push(cell(-1, -1, ComponentType::AffinePlane));
    out.push(cell(-1, k - 1, ComponentType::AffinePlane));
    out.push(cell(k, -1, ComponentType::AffinePlane));
    for h in 0..k - 1 {
        out.push(cell(-1, h, ComponentType::AffineLineTimesProj));
    }
    for a in 1..k {
        out.push(cell(a, -1, ComponentType::AffineLineTimesProj));
    }
    for a in 1..k {
        for h in 0..k - a {
            let kind = if a + h == k - 1 { ComponentType::BlowUp } else { ComponentType::ProjTimesProj };
            out.push(cell(a, h, kind));
        }
    }
    out
}

fn put(canvas: &mut [Vec<char>], row: usize, col: usize, s: &str) {
    for (i, ch) in s.chars().enumerate() {
        canvas[row][col + i] = ch;
    }
}

/// The picture, one string per row, trailing spaces trimmed.
pub fn moment_map_grid(k: usize) -> Vec<String> {
    let col = |x: usize| 4 + 6 * x;
    let row = |y: i64| (2 * (k as i64 - y) + 1) as usize;
    let (height, width) = (2 * k + 5, col(k) + 8);
    let mut c = vec![vec![' '; width]; height];
    for h in 0..k {
        let r = row(h as i64);
        put(&mut c, r, 0, "x1");
        for x in 3..=col(k - h) {
            c[r][x] = '-';
        }
        for a in 1..=k - h {
            c[r][col(a)] = '+';
        }
        for a in 1..k - h {
            put(&mut c, r, col(a) + 2, &format!("C1{}", k - a));
        }
    }
    for a in 1..=k {
        let (top, bottom) = (row((k - a) as i64), row(-1));
        for r in top + 1..=bottom {
            if c[r][col(a)] == ' ' {
                c[r][col(a)] = '|';
            }
        }
        c[top][col(a)] = '+';
        for h in 0..k - a {
            put(&mut c, row(h as i64) - 1, col(a) + 1, &format!("C2{}", h + 1));
        }
        put(&mut c, bottom + 1, col(a), "x3");
        c[top - 1][col(a) + 1] = '/';
        put(&mut c, top - 2, col(a) + 2, "x2");
    }
    let lines: Vec<String> = c.into_iter().map(|r| r.into_iter().collect::<String>().trim_end().to_string()).collect();
    lines.into_iter().skip_while(|l| l.is_empty()).collect()
}
