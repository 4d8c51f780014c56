//! Spine-subtree types and the alternating `Fa (X|Fa) Fa ...` runs that
//! earn the fourth summand of the formula.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lobster::{validate, DepthClass, LobsterError, LobsterStructure, SpineSubtree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubtreeType {
    /// Depth 2, every branch has at least three 2-leaves.
    Fa,
    /// Depth 1, two leaves, next to another depth-1 subtree.
    G,
    /// Depth 1, at least three leaves.
    Xa,
    /// Depth 2, exactly one branch with at most two 2-leaves.
    Xb,
    /// Depth 1, two leaves, every neighbour of depth 2.
    Xc,
    /// Depth 2, at least two branches with at most two 2-leaves.
    Yc,
}

impl SubtreeType {
    pub const ALL: [SubtreeType; 6] = [
        SubtreeType::Fa,
        SubtreeType::G,
        SubtreeType::Xa,
        SubtreeType::Xb,
        SubtreeType::Xc,
        SubtreeType::Yc,
    ];

    pub fn is_x(self) -> bool {
        matches!(self, SubtreeType::Xa | SubtreeType::Xb | SubtreeType::Xc)
    }

    /// Types that lose one unit when they sit between two raised roots.
    pub fn is_bxc(self) -> bool {
        matches!(self, SubtreeType::Xb | SubtreeType::Xc)
    }

    pub fn exceed_class(self) -> ExceedClass {
        match self {
            SubtreeType::Fa | SubtreeType::G | SubtreeType::Xa => ExceedClass::E0,
            SubtreeType::Xb | SubtreeType::Yc => ExceedClass::E1,
            SubtreeType::Xc => ExceedClass::E2,
        }
    }
}

impl fmt::Display for SubtreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How far the leaf values of a subtree reach past the subtree after the
/// third construction stage: a 1-leaf valued `e + 1` or a 2-leaf valued
/// `e + 2` exceeds by `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceedClass {
    E0,
    E1,
    E2,
}

impl ExceedClass {
    pub fn amount(self) -> u64 {
        match self {
            ExceedClass::E0 => 0,
            ExceedClass::E1 => 1,
            ExceedClass::E2 => 2,
        }
    }
}

/// A neighbouring position; `None` is the empty subtree past either end.
pub type Slot = Option<SubtreeType>;

/// Members of `E0`, with the empty subtree included.
pub fn in_e0(slot: Slot) -> bool {
    slot.is_none_or(|t| t.exceed_class() == ExceedClass::E0)
}

/// Complement of `E2`, with the empty subtree included.
pub fn not_e2(slot: Slot) -> bool {
    slot.is_none_or(|t| t.exceed_class() != ExceedClass::E2)
}

fn slot(types: &[SubtreeType], i: isize) -> Slot {
    if i < 0 {
        None
    } else {
        types.get(i as usize).copied()
    }
}

fn classify_one(
    s: &SpineSubtree,
    prev: Option<&SpineSubtree>,
    next: Option<&SpineSubtree>,
) -> SubtreeType {
    match s.depth_class {
        DepthClass::S1 if s.lambda1 >= 3 => SubtreeType::Xa,
        DepthClass::S1 => {
            let s1_neighbour = [prev, next]
                .into_iter()
                .flatten()
                .any(|t| t.depth_class == DepthClass::S1);
            if s1_neighbour {
                SubtreeType::G
            } else {
                SubtreeType::Xc
            }
        }
        DepthClass::S2 => match s.alpha2_star {
            0 => SubtreeType::Fa,
            1 => SubtreeType::Xb,
            _ => SubtreeType::Yc,
        },
        DepthClass::Mixed => unreachable!("validated structures are locally uniform"),
    }
}

/// Type of every spine-subtree, in spine order.
pub fn classify_all(structure: &LobsterStructure) -> Result<Vec<SubtreeType>, LobsterError> {
    validate(structure)?;
    let subs = structure.subtrees();
    let types: Vec<SubtreeType> = (0..subs.len())
        .map(|i| {
            let prev = i.checked_sub(1).map(|j| &subs[j]);
            classify_one(&subs[i], prev, subs.get(i + 1))
        })
        .collect();
    debug_assert!(xc_isolated_from_g_and_xa(&types));
    Ok(types)
}

/// No `G` or `Xa` subtree has an `Xc` neighbour.
pub fn xc_isolated_from_g_and_xa(types: &[SubtreeType]) -> bool {
    types.windows(2).all(|w| {
        let bad = |a: SubtreeType, b: SubtreeType| {
            matches!(a, SubtreeType::G | SubtreeType::Xa) && b == SubtreeType::Xc
        };
        !bad(w[0], w[1]) && !bad(w[1], w[0])
    })
}

/// A run `A_0 X_1 A_1 ... X_p A_p` of consecutive spine-subtrees: every
/// `A` is `Fa` and every `X` is `Xa`, `Xb`, `Xc` or `Fa`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineRun {
    pub start: usize,
    pub end: usize,
    pub p: usize,
    pub x_roles: Vec<SubtreeType>,
    pub bxc_count: usize,
}

impl SpineRun {
    fn new(types: &[SubtreeType], start: usize, end: usize) -> Self {
        let x_roles: Vec<SubtreeType> = (start + 1..end).step_by(2).map(|i| types[i]).collect();
        SpineRun {
            start,
            end,
            p: (end - start) / 2,
            bxc_count: x_roles.iter().filter(|t| t.is_bxc()).count(),
            x_roles,
        }
    }

    /// Number of spine-subtrees in the run.
    pub fn len(&self) -> usize {
        2 * self.p + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(len + 1) / 2` minus the `Xb`/`Xc` count.
    pub fn value(&self) -> u64 {
        (self.p + 1 - self.bxc_count) as u64
    }

    pub fn a_positions(&self) -> impl Iterator<Item = usize> {
        (self.start..=self.end).step_by(2)
    }

    pub fn x_positions(&self) -> impl Iterator<Item = usize> {
        (self.start + 1..self.end).step_by(2)
    }
}

fn left_context_ok(types: &[SubtreeType], i: usize) -> bool {
    let i = i as isize;
    in_e0(slot(types, i - 1)) && not_e2(slot(types, i - 2))
}

fn right_context_ok(types: &[SubtreeType], i: usize) -> bool {
    let i = i as isize;
    in_e0(slot(types, i + 1)) && not_e2(slot(types, i + 2))
}

/// Whether `[start, end]` is a well-formed run whose outer contexts are
/// `E2-bar . E0` on the left and `E0 . E2-bar` on the right.
pub fn is_valid_run(types: &[SubtreeType], start: usize, end: usize) -> bool {
    end < types.len()
        && start <= end
        && (end - start).is_multiple_of(2)
        && (start..=end).all(|i| {
            let t = types[i];
            if (i - start).is_multiple_of(2) {
                t == SubtreeType::Fa
            } else {
                t == SubtreeType::Fa || t.is_x()
            }
        })
        && left_context_ok(types, start)
        && right_context_ok(types, end)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    /// Position outside every run.
    Free,
    /// Last `A` of a run.
    Ended,
    /// An `A` followed by an `X` of the same run.
    Open,
    /// An `X` position.
    X,
}

const NEG: i64 = i64::MIN / 4;

/// Picks the runs that raise the cost the most.
///
/// Runs are pairwise disjoint and never adjacent (two raised spine roots
/// cannot be neighbours); among the admissible families the total value is
/// maximized by a left-to-right dynamic program over four states, which
/// keeps the choice independent of spine orientation. Runs separated by a
/// single `Xa`/`Fa` position are merged, which leaves the total unchanged.
pub fn select_runs(types: &[SubtreeType]) -> Vec<SpineRun> {
    let len = types.len();
    if len == 0 {
        return Vec::new();
    }
    // best[i][s] and the predecessor state at i - 1 (None = run starts here
    // from a free prefix, or the empty prefix).
    let mut best = vec![[NEG; 4]; len];
    let mut back: Vec<[Option<State>; 4]> = vec![[None; 4]; len];
    let idx = |s: State| s as usize;

    for i in 0..len {
        let t = types[i];
        let prev_row = if i == 0 {
            let mut start = [NEG; 4];
            start[idx(State::Free)] = 0;
            start
        } else {
            best[i - 1]
        };
        let prev = |s: State| prev_row[idx(s)];
        let prev_state = |s: State| if i == 0 { None } else { Some(s) };

        // Free.
        let (pf, pe) = (prev(State::Free), prev(State::Ended));
        if pf >= pe {
            best[i][idx(State::Free)] = pf;
            back[i][idx(State::Free)] = prev_state(State::Free);
        } else {
            best[i][idx(State::Free)] = pe;
            back[i][idx(State::Free)] = prev_state(State::Ended);
        }

        if t == SubtreeType::Fa {
            let cont = prev(State::X);
            let fresh = if left_context_ok(types, i) {
                prev(State::Free)
            } else {
                NEG
            };
            // Ties continue the current run so runs stay long.
            let (v, from) = if cont >= fresh {
                (cont, prev_state(State::X))
            } else {
                (fresh, prev_state(State::Free))
            };
            if v > NEG {
                best[i][idx(State::Open)] = v + 1;
                back[i][idx(State::Open)] = from;
                if right_context_ok(types, i) {
                    best[i][idx(State::Ended)] = v + 1;
                    back[i][idx(State::Ended)] = from;
                }
            }
        }

        if (t == SubtreeType::Fa || t.is_x()) && prev(State::Open) > NEG {
            best[i][idx(State::X)] = prev(State::Open) - i64::from(t.is_bxc());
            back[i][idx(State::X)] = prev_state(State::Open);
        }
    }

    let last = len - 1;
    let mut state = if best[last][idx(State::Ended)] > best[last][idx(State::Free)] {
        State::Ended
    } else {
        State::Free
    };
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut run_end = None;
    for i in (0..len).rev() {
        match state {
            State::Ended => run_end = Some(i),
            State::Open | State::Free | State::X => {}
        }
        let from = back[i][idx(state)];
        let starts_here =
            matches!(state, State::Open | State::Ended) && from.is_none_or(|f| f == State::Free);
        if starts_here {
            runs.push((i, run_end.take().expect("a run start follows its end")));
        }
        match from {
            Some(f) => state = f,
            None => break,
        }
    }
    runs.reverse();

    let mut merged: Vec<(usize, usize)> = Vec::with_capacity(runs.len());
    for (s, e) in runs {
        match merged.last_mut() {
            Some(last)
                if s == last.1 + 2
                    && (types[last.1 + 1] == SubtreeType::Fa
                        || types[last.1 + 1] == SubtreeType::Xa) =>
            {
                last.1 = e
            }
            _ => merged.push((s, e)),
        }
    }
    debug_assert!(merged.iter().all(|&(s, e)| is_valid_run(types, s, e)));
    merged
        .into_iter()
        .map(|(s, e)| SpineRun::new(types, s, e))
        .collect()
}

/// Sum of the run values.
pub fn runs_total(sequences: &[SpineRun]) -> u64 {
    sequences.iter().map(SpineRun::value).sum()
}
