//! Dyck paths and their axis-contact statistic.

use super::{CombinatoricsError, ENUMERATION_CAP};

/// A walk of `+1`/`-1` steps of even length whose prefix sums stay
/// nonnegative and whose total sum is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<i8>,
}

impl DyckPath {
    pub fn new(steps: Vec<i8>) -> Result<Self, CombinatoricsError> {
        if !steps.len().is_multiple_of(2) {
            return Err(CombinatoricsError::InvalidDyckPath);
        }
        let mut height: i64 = 0;
        for &s in &steps {
            if s != 1 && s != -1 {
                return Err(CombinatoricsError::InvalidDyckPath);
            }
            height += i64::from(s);
            if height < 0 {
                return Err(CombinatoricsError::InvalidDyckPath);
            }
        }
        if height != 0 {
            return Err(CombinatoricsError::InvalidDyckPath);
        }
        Ok(DyckPath { steps })
    }

    /// Order `n`; the path has `2n` steps.
    pub fn order(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    /// Parse a `+-` string such as `"++--"`.
    pub fn parse(text: &str) -> Result<Self, CombinatoricsError> {
        let steps = text
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(CombinatoricsError::InvalidDyckPath),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        DyckPath::new(steps)
    }
}

impl std::fmt::Display for DyckPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.steps {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Number of meetings of the path with the axis, excluding the terminal
/// point: the count of positions `i` in `0..2n` whose prefix height is
/// zero. Position `0` always counts, so the result is at least one; it
/// equals the number of level-zero arches of the path.
pub fn touch_count(w: &DyckPath) -> usize {
    let mut height: i64 = 0;
    let mut touches = 0;
    for &s in w.steps() {
        if height == 0 {
            touches += 1;
        }
        height += i64::from(s);
    }
    touches
}

/// Lexicographic stream of all Dyck paths of order `n` (`+1` sorts before
/// `-1`). Refuses orders above [`ENUMERATION_CAP`].
pub fn enumerate_dyck_paths(n: usize) -> Result<DyckPathIter, CombinatoricsError> {
    if n > ENUMERATION_CAP {
        return Err(CombinatoricsError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(DyckPathIter {
        n,
        steps: Vec::new(),
        started: false,
        done: false,
    })
}

#[derive(Debug)]
pub struct DyckPathIter {
    n: usize,
    steps: Vec<i8>,
    started: bool,
    done: bool,
}

impl DyckPathIter {
    /// Greedy completion from `from`: prefer `+1` while the path can still
    /// close, keeping the prefix condition intact.
    fn fill_first(&mut self, from: usize) {
        let total = 2 * self.n;
        let mut ups = 0usize;
        let mut height: i64 = 0;
        for &s in &self.steps[..from] {
            if s == 1 {
                ups += 1;
            }
            height += i64::from(s);
        }
        self.steps.truncate(from);
        for pos in from..total {
            let remaining_after = (total - pos - 1) as i64;
            // an up-step is allowed while the raised height stays closable
            if ups < self.n && height < remaining_after {
                self.steps.push(1);
                ups += 1;
                height += 1;
            } else {
                self.steps.push(-1);
                height -= 1;
            }
        }
        debug_assert_eq!(height, 0);
    }
}

impl Iterator for DyckPathIter {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
                return Some(DyckPath { steps: Vec::new() });
            }
            self.fill_first(0);
            return Some(DyckPath {
                steps: self.steps.clone(),
            });
        }
        // Successor: rightmost up-step that can become a down-step while the
        // prefix below it still has positive height.
        let mut height: i64 = self.steps.iter().map(|&s| i64::from(s)).sum::<i64>();
        debug_assert_eq!(height, 0);
        for i in (0..self.steps.len()).rev() {
            height -= i64::from(self.steps[i]);
            if self.steps[i] == 1 && height > 0 {
                self.steps[i] = -1;
                self.fill_first(i + 1);
                return Some(DyckPath {
                    steps: self.steps.clone(),
                });
            }
        }
        self.done = true;
        None
    }
}
