//! Combinatorics of the 4-plat diagram of a Conway word.
//!
//! Strand positions are 0..4 from left to right. The top caps join (0,1) and
//! (2,3); block `i` (0-based) twists positions (1,2) when `i` is even and (0,1)
//! when `i` is odd. A level is a horizontal slice between consecutive crossings;
//! level 0 is just below the top caps and level `N` just above the bottom caps.
//! Directions are `+1` for downward travel.

use std::ops::{Add, Mul, Neg, Sub};

use crate::conway::ConwayWord;
use crate::{Error, Result};

/// One crossing of the diagram, sitting between level `level` and `level + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub block: usize,
    pub level: usize,
    pub left: usize,
    pub right: usize,
    /// Sign of the block entry in J-notation: `+1` means the over strand enters from the right.
    pub jsign: i8,
}

/// Which components to reverse relative to the default (both top bridges pointing down).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Orientation {
    /// Reverse the component through position 1 at the top. Ignored for knots.
    pub reverse_a: bool,
    /// Reverse the component through position 2 at the top (for knots: the whole knot).
    pub reverse_b: bool,
}

impl Orientation {
    pub const DEFAULT: Orientation = Orientation { reverse_a: false, reverse_b: false };
    pub const TWIST_A: Orientation = Orientation { reverse_a: true, reverse_b: false };
    pub const REVERSED: Orientation = Orientation { reverse_a: true, reverse_b: true };
}

/// Traced diagram of a normalized word.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub blocks: Vec<i64>,
    pub jblocks: Vec<i64>,
    pub crossings: Vec<Crossing>,
    /// `dirs[level][pos]`.
    pub dirs: Vec<[i8; 4]>,
    /// Level at which each block starts.
    pub block_start: Vec<usize>,
    pub is_knot: bool,
    pub orientation: Orientation,
}

/// Positions twisted by block `i`.
pub fn block_positions(i: usize) -> (usize, usize) {
    if i % 2 == 0 {
        (1, 2)
    } else {
        (0, 1)
    }
}

impl Diagram {
    pub fn new(word: &ConwayWord, orientation: Orientation) -> Result<Diagram> {
        if !word.is_normalized() {
            return Err(Error::InvalidInput(format!("{word} has zero blocks; normalize first")));
        }
        let blocks = word.c_blocks();
        let jblocks = word.j_blocks();
        let mut crossings = Vec::new();
        let mut block_start = Vec::new();
        for (i, &n) in jblocks.iter().enumerate() {
            let (left, right) = block_positions(i);
            block_start.push(crossings.len());
            for _ in 0..n.unsigned_abs() {
                let level = crossings.len();
                crossings.push(Crossing { block: i, level, left, right, jsign: n.signum() as i8 });
            }
        }
        let n = crossings.len();
        let k = blocks.len();
        let mut bottom = [0usize; 4];
        let pairs = if k % 2 == 1 { [(0, 1), (2, 3)] } else { [(1, 2), (0, 3)] };
        for (a, b) in pairs {
            bottom[a] = b;
            bottom[b] = a;
        }
        let top = [1usize, 0, 3, 2];
        let mut dirs = vec![[0i8; 4]; n + 1];
        let run = |dirs: &mut Vec<[i8; 4]>, start: usize| {
            let (mut lvl, mut pos, mut dr) = (0usize, start, 1i8);
            while dirs[lvl][pos] == 0 {
                dirs[lvl][pos] = dr;
                if dr == 1 {
                    if lvl == n {
                        pos = bottom[pos];
                        dr = -1;
                        continue;
                    }
                    let c = crossings[lvl];
                    pos = swap_at(pos, c.left, c.right);
                    lvl += 1;
                } else {
                    if lvl == 0 {
                        pos = top[pos];
                        dr = 1;
                        continue;
                    }
                    let c = crossings[lvl - 1];
                    pos = swap_at(pos, c.left, c.right);
                    lvl -= 1;
                }
            }
        };
        run(&mut dirs, if orientation.reverse_b { 3 } else { 2 });
        let is_knot = dirs[0][1] != 0;
        if !is_knot {
            run(&mut dirs, if orientation.reverse_a { 0 } else { 1 });
        }
        debug_assert!(dirs.iter().all(|d| d.iter().all(|&x| x != 0)));
        Ok(Diagram { blocks, jblocks, crossings, dirs, block_start, is_knot, orientation })
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_levels(&self) -> usize {
        self.crossings.len() + 1
    }

    /// Direction of the over strand entering crossing `c` from above.
    pub fn over_direction(&self, c: &Crossing) -> i8 {
        if c.jsign > 0 {
            self.dirs[c.level][c.right]
        } else {
            self.dirs[c.level][c.left]
        }
    }

    /// Whether the two strands of block `i` run in parallel.
    pub fn block_is_parallel(&self, i: usize) -> bool {
        let (l, r) = block_positions(i);
        let lvl = self.block_start[i];
        self.dirs[lvl][l] == self.dirs[lvl][r]
    }

    /// Bottom-cap pairs of positions.
    pub fn bottom_caps(&self) -> [(usize, usize); 2] {
        if self.blocks.len() % 2 == 1 {
            [(0, 1), (2, 3)]
        } else {
            [(1, 2), (0, 3)]
        }
    }
}

fn swap_at(pos: usize, l: usize, r: usize) -> usize {
    if pos == l {
        r
    } else if pos == r {
        l
    } else {
        pos
    }
}

/// Ring operations needed to propagate coloring vectors.
pub trait ColorRing: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {}

impl<T> ColorRing for T where T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> {}

/// A coloring vector: coordinates in C^2, or coefficients on the basis `a, b`.
pub type Vec2<T> = [T; 2];

/// Symplectic form scaled by `kappa` (`kappa = u` on the basis `a, b`, `1` on C^2).
pub fn form<T: ColorRing>(x: &Vec2<T>, y: &Vec2<T>, kappa: &T) -> T {
    (x[0].clone() * y[1].clone() - x[1].clone() * y[0].clone()) * kappa.clone()
}

fn signed<T: ColorRing>(s: i8, x: T) -> T {
    if s < 0 {
        -x
    } else {
        x
    }
}

/// Vectors at every level, starting from `init` at level 0.
pub fn propagate<T: ColorRing>(d: &Diagram, init: [Vec2<T>; 4], kappa: &T) -> Vec<[Vec2<T>; 4]> {
    let mut levels = Vec::with_capacity(d.num_levels());
    let mut cur = init;
    levels.push(cur.clone());
    for c in &d.crossings {
        let (l, r) = (cur[c.left].clone(), cur[c.right].clone());
        let v = signed(d.over_direction(c), form(&l, &r, kappa));
        let lin = |p: &Vec2<T>, s: &T, q: &Vec2<T>| -> Vec2<T> {
            // -p - s q
            [-p[0].clone() - s.clone() * q[0].clone(), -p[1].clone() - s.clone() * q[1].clone()]
        };
        if c.jsign > 0 {
            cur[c.left] = r.clone();
            cur[c.right] = lin(&l, &v, &r);
        } else {
            cur[c.right] = l.clone();
            let nl = [-(v.clone() * l[0].clone()) - r[0].clone(), -(v.clone() * l[1].clone()) - r[1].clone()];
            cur[c.left] = nl;
        }
        levels.push(cur.clone());
    }
    levels
}

/// Regions of the diagram: connected components of the plane minus the diagram.
///
/// Gap `g` at a level lies between positions `g-1` and `g` (gaps 0 and 4 are outside).
#[derive(Clone, Debug)]
pub struct Regions {
    /// `id[level][gap]`.
    pub id: Vec<[usize; 5]>,
    pub count: usize,
    pub outer: usize,
}

impl Diagram {
    pub fn regions(&self) -> Regions {
        let n = self.num_levels();
        let idx = |l: usize, g: usize| l * 5 + g;
        let mut parent: Vec<usize> = (0..5 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        let outer = idx(0, 0);
        for l in 0..n {
            union(&mut parent, idx(l, 0), outer);
            union(&mut parent, idx(l, 4), outer);
        }
        union(&mut parent, idx(0, 2), outer);
        for c in &self.crossings {
            for g in 0..5 {
                if g != c.left + 1 {
                    union(&mut parent, idx(c.level, g), idx(c.level + 1, g));
                }
            }
        }
        let last = n - 1;
        if self.blocks.len() % 2 == 1 {
            union(&mut parent, idx(last, 2), outer);
        } else {
            union(&mut parent, idx(last, 1), idx(last, 3));
        }
        let mut label = vec![usize::MAX; 5 * n];
        let mut count = 0;
        let mut id = vec![[0usize; 5]; n];
        // outer region gets id 0
        let ro = find(&mut parent, outer);
        label[ro] = 0;
        count += 1;
        for (l, row) in id.iter_mut().enumerate() {
            for (g, slot) in row.iter_mut().enumerate() {
                let r = find(&mut parent, idx(l, g));
                if label[r] == usize::MAX {
                    label[r] = count;
                    count += 1;
                }
                *slot = label[r];
            }
        }
        Regions { id, count, outer: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_trace() {
        let d = Diagram::new(&ConwayWord::c(vec![3]), Orientation::DEFAULT).unwrap();
        assert!(d.is_knot);
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.regions().count, 5);
    }

    #[test]
    fn link_components() {
        let d = Diagram::new(&ConwayWord::c(vec![4]), Orientation::DEFAULT).unwrap();
        assert!(!d.is_knot);
        assert!(d.block_is_parallel(0));
        let t = Diagram::new(&ConwayWord::c(vec![4]), Orientation::TWIST_A).unwrap();
        assert!(!t.block_is_parallel(0));
    }

    #[test]
    fn region_count_is_crossings_plus_two() {
        for w in [vec![2, 3], vec![2, 1, 4], vec![3, 2, 3], vec![2, 6, 2, -2, 2, 3], vec![1, 1]] {
            let d = Diagram::new(&ConwayWord::c(w.clone()), Orientation::DEFAULT).unwrap();
            assert_eq!(d.regions().count, d.num_crossings() + 2, "{w:?}");
        }
    }
}
