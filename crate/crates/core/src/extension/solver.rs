//! A small backtracking solver over 0/1 variables.
//!
//! Constraints come in groups: every linear expression in a group must take
//! the same value, and that common value must lie in the group's target
//! interval. A pairwise difference constraint is a group of one expression
//! with target `[0, 0]`; a per-level target constraint is a group holding one
//! expression per pattern with a shared (possibly pinned) target.
//!
//! Propagation is interval reasoning on each expression. An expression with
//! free terms whose upper bound equals the group's lower limit forces all of
//! its free terms to their maximising values, and symmetrically for the lower
//! bound. A variable may appear more than once in an expression; the bounds
//! treat each occurrence independently, which is weaker but still sound.

#[derive(Clone, Debug, Default)]
pub(crate) struct Model {
    num_vars: usize,
    exprs: Vec<Vec<(u32, i8)>>,
    groups: Vec<(Vec<u32>, i32, i32)>,
    fixed: Vec<(usize, bool)>,
}

impl Model {
    pub fn new(num_vars: usize) -> Self {
        Model {
            num_vars,
            ..Default::default()
        }
    }

    /// Adds an expression `sum coef * x_var` and returns its handle.
    pub fn add_expr(&mut self, terms: Vec<(usize, i8)>) -> usize {
        debug_assert!(terms.iter().all(|&(v, c)| v < self.num_vars && (c == 1 || c == -1)));
        self.exprs
            .push(terms.into_iter().map(|(v, c)| (v as u32, c)).collect());
        self.exprs.len() - 1
    }

    /// Requires every expression in `exprs` to equal a common value in `lo..=hi`.
    pub fn add_group(&mut self, exprs: Vec<usize>, lo: i32, hi: i32) {
        if !exprs.is_empty() {
            self.groups
                .push((exprs.into_iter().map(|e| e as u32).collect(), lo, hi));
        }
    }

    pub fn fix(&mut self, var: usize, value: bool) {
        self.fixed.push((var, value));
    }

    /// Every satisfying assignment, visiting variables in index order and
    /// trying 1 before 0.
    pub fn solve_all(&self) -> Vec<Vec<bool>> {
        let mut state = State::new(self);
        let mut out = Vec::new();
        let mut ok = true;
        for &(v, val) in &self.fixed {
            if !state.assign(v, val as i8) {
                ok = false;
                break;
            }
        }
        if ok && state.propagate_all() {
            state.branch(0, &mut out);
        }
        out
    }
}

const FREE: i8 = -1;

struct State<'m> {
    model: &'m Model,
    value: Vec<i8>,
    sum: Vec<i32>,
    free_pos: Vec<i32>,
    free_neg: Vec<i32>,
    occurrences: Vec<Vec<(u32, i8)>>,
    groups_of_expr: Vec<Vec<u32>>,
    trail: Vec<u32>,
    queue: Vec<u32>,
    queued: Vec<bool>,
}

impl<'m> State<'m> {
    fn new(model: &'m Model) -> Self {
        let mut occurrences = vec![Vec::new(); model.num_vars];
        let mut free_pos = vec![0; model.exprs.len()];
        let mut free_neg = vec![0; model.exprs.len()];
        for (e, terms) in model.exprs.iter().enumerate() {
            for &(v, c) in terms {
                occurrences[v as usize].push((e as u32, c));
                if c > 0 {
                    free_pos[e] += 1;
                } else {
                    free_neg[e] += 1;
                }
            }
        }
        let mut groups_of_expr = vec![Vec::new(); model.exprs.len()];
        for (g, (exprs, _, _)) in model.groups.iter().enumerate() {
            for &e in exprs {
                groups_of_expr[e as usize].push(g as u32);
            }
        }
        State {
            model,
            value: vec![FREE; model.num_vars],
            sum: vec![0; model.exprs.len()],
            free_pos,
            free_neg,
            occurrences,
            groups_of_expr,
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; model.groups.len()],
        }
    }

    // Returns false on an immediate clash with an existing value.
    fn assign(&mut self, v: usize, val: i8) -> bool {
        if self.value[v] != FREE {
            return self.value[v] == val;
        }
        self.value[v] = val;
        self.trail.push(v as u32);
        for &(e, c) in &self.occurrences[v] {
            let e = e as usize;
            if c > 0 {
                self.free_pos[e] -= 1;
            } else {
                self.free_neg[e] -= 1;
            }
            self.sum[e] += c as i32 * val as i32;
            for &g in &self.groups_of_expr[e] {
                if !self.queued[g as usize] {
                    self.queued[g as usize] = true;
                    self.queue.push(g);
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap() as usize;
            let val = self.value[v];
            for &(e, c) in &self.occurrences[v] {
                let e = e as usize;
                if c > 0 {
                    self.free_pos[e] += 1;
                } else {
                    self.free_neg[e] += 1;
                }
                self.sum[e] -= c as i32 * val as i32;
            }
            self.value[v] = FREE;
        }
    }

    fn clear_queue(&mut self) {
        for g in self.queue.drain(..) {
            self.queued[g as usize] = false;
        }
    }

    fn propagate_all(&mut self) -> bool {
        for g in 0..self.model.groups.len() {
            if !self.queued[g] {
                self.queued[g] = true;
                self.queue.push(g as u32);
            }
        }
        self.propagate()
    }

    fn propagate(&mut self) -> bool {
        while let Some(g) = self.queue.pop() {
            self.queued[g as usize] = false;
            if !self.propagate_group(g as usize) {
                self.clear_queue();
                return false;
            }
        }
        true
    }

    fn propagate_group(&mut self, g: usize) -> bool {
        let (exprs, tlo, thi) = &self.model.groups[g];
        let (mut lo, mut hi) = (*tlo, *thi);
        for &e in exprs {
            let e = e as usize;
            lo = lo.max(self.sum[e] - self.free_neg[e]);
            hi = hi.min(self.sum[e] + self.free_pos[e]);
        }
        if lo > hi {
            return false;
        }
        for &e in exprs {
            let e = e as usize;
            if self.free_pos[e] + self.free_neg[e] == 0 {
                continue;
            }
            let (e_lo, e_hi) = (self.sum[e] - self.free_neg[e], self.sum[e] + self.free_pos[e]);
            let maximise = if e_hi == lo {
                true
            } else if e_lo == hi {
                false
            } else {
                continue;
            };
            for &(v, c) in &self.model.exprs[e] {
                if self.value[v as usize] != FREE {
                    continue;
                }
                let want = ((c > 0) == maximise) as i8;
                if !self.assign(v as usize, want) {
                    return false;
                }
            }
        }
        true
    }

    fn branch(&mut self, from: usize, out: &mut Vec<Vec<bool>>) {
        let Some(v) = (from..self.model.num_vars).find(|&v| self.value[v] == FREE) else {
            out.push(self.value.iter().map(|&x| x == 1).collect());
            return;
        };
        for val in [1, 0] {
            let mark = self.trail.len();
            if self.assign(v, val) && self.propagate() {
                self.branch(v + 1, out);
            }
            self.clear_queue();
            self.undo_to(mark);
        }
    }
}
