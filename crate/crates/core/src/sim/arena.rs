use std::fmt;

pub type VertexId = u32;

const VACANT: VertexId = VertexId::MAX;

/// State of the frog that starts at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrogState {
    Sleeping,
    Awake(VertexId),
    Dead,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrityError(pub String);

impl fmt::Display for IntegrityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for IntegrityError {}

/// The part of `T_d` that has been visited so far, grown on demand.
///
/// Every vertex owns `d + 1` neighbour slots. At the root all slots hold
/// children; slot 0 is the distinguished neighbour `ρ′` whose subtree lies
/// outside `T_d⁺(ρ)`. At every other vertex slot 0 is the parent and slots
/// `1..=d` are children. Each vertex carries exactly one frog.
#[derive(Debug, Clone)]
pub struct TreeArena {
    d: u32,
    slots: Vec<VertexId>,
    depth: Vec<u32>,
    inside: Vec<bool>,
    frogs: Vec<FrogState>,
}

impl TreeArena {
    pub const ROOT: VertexId = 0;

    pub fn new(d: u32) -> Self {
        let mut arena = TreeArena {
            d,
            slots: Vec::new(),
            depth: Vec::new(),
            inside: Vec::new(),
            frogs: Vec::new(),
        };
        arena.clear();
        arena
    }

    /// Drops everything except a fresh root, keeping allocations.
    pub fn clear(&mut self) {
        self.slots.clear();
        self.depth.clear();
        self.inside.clear();
        self.frogs.clear();
        self.push_vertex(0, true);
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.d as usize + 1
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    /// Graph distance from the root.
    #[inline]
    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v as usize]
    }

    /// Whether `v` belongs to `T_d⁺(ρ)`.
    #[inline]
    pub fn is_inside(&self, v: VertexId) -> bool {
        self.inside[v as usize]
    }

    #[inline]
    pub fn frog(&self, v: VertexId) -> FrogState {
        self.frogs[v as usize]
    }

    #[inline]
    pub fn set_frog(&mut self, v: VertexId, state: FrogState) {
        self.frogs[v as usize] = state;
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        (v != Self::ROOT).then(|| self.slots[v as usize * self.arity()])
    }

    /// The neighbour in `slot`, if it has been created.
    #[inline]
    pub fn existing_neighbor(&self, v: VertexId, slot: usize) -> Option<VertexId> {
        let w = self.slots[v as usize * self.arity() + slot];
        (w != VACANT).then_some(w)
    }

    /// The neighbour in `slot`, creating it (with a sleeping frog) on first use.
    #[inline]
    pub fn neighbor(&mut self, v: VertexId, slot: usize) -> VertexId {
        debug_assert!(slot < self.arity());
        let arity = self.arity();
        let idx = v as usize * arity + slot;
        let w = self.slots[idx];
        if w != VACANT {
            return w;
        }
        let inside = if v == Self::ROOT {
            slot != 0
        } else {
            self.inside[v as usize]
        };
        let w = self.push_vertex(self.depth[v as usize] + 1, inside);
        self.slots[idx] = w;
        self.slots[w as usize * arity] = v;
        w
    }

    fn push_vertex(&mut self, depth: u32, inside: bool) -> VertexId {
        let id = VertexId::try_from(self.depth.len()).expect("arena exceeds u32 vertices");
        assert!(id != VACANT, "arena exceeds u32 vertices");
        self.slots.extend(std::iter::repeat_n(VACANT, self.arity()));
        self.depth.push(depth);
        self.inside.push(inside);
        self.frogs.push(FrogState::Sleeping);
        id
    }

    /// Checks parent/child linkage, depths and the one-frog-per-vertex rule.
    pub fn check_integrity(&self) -> Result<(), IntegrityError> {
        let arity = self.arity();
        let n = self.len();
        let fail = |msg: String| Err(IntegrityError(msg));
        if self.slots.len() != n * arity || self.inside.len() != n || self.frogs.len() != n {
            return fail("per-vertex tables have inconsistent lengths".into());
        }
        if n == 0 || self.depth[0] != 0 || !self.inside[0] {
            return fail("root missing or malformed".into());
        }
        for v in 0..n {
            let first_child = usize::from(v != 0);
            if v != 0 {
                let parent = self.slots[v * arity];
                if parent == VACANT || parent as usize >= v {
                    return fail(format!("vertex {v} has bad parent {parent}"));
                }
                let links = (0..arity)
                    .filter(|&s| {
                        let first = usize::from(parent != 0);
                        s >= first && self.slots[parent as usize * arity + s] == v as VertexId
                    })
                    .count();
                if links != 1 {
                    return fail(format!("vertex {v} appears {links} times under its parent"));
                }
                if self.depth[v] != self.depth[parent as usize] + 1 {
                    return fail(format!("vertex {v} has inconsistent depth"));
                }
            }
            for s in first_child..arity {
                let c = self.slots[v * arity + s];
                if c != VACANT
                    && (c as usize >= n || self.slots[c as usize * arity] != v as VertexId)
                {
                    return fail(format!("child {c} of {v} does not point back"));
                }
            }
            if let FrogState::Awake(pos) = self.frogs[v] {
                if pos as usize >= n {
                    return fail(format!("frog {v} sits at unknown vertex {pos}"));
                }
            }
        }
        Ok(())
    }
}
