use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("l = {l} incompatible with edge dimension {s} for k = {k}: need l <= s*k - 1")]
    Incompatible { k: usize, l: usize, s: usize },
}

/// The pair (k, l) defining a sparsity class: no vertex subset may span
/// more than k*n' - l edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SparsityParams {
    k: usize,
    l: usize,
}

impl SparsityParams {
    pub fn new(k: usize, l: usize) -> Result<Self, ParamError> {
        if k == 0 {
            return Err(ParamError::ZeroK);
        }
        Ok(SparsityParams { k, l })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// True when edges of dimension `s` can exist at all in a sparse graph,
    /// i.e. l <= s*k - 1.
    pub fn admits_dimension(&self, s: usize) -> bool {
        self.l < s * self.k
    }

    /// Errors unless l <= s*k - 1.
    pub fn check_dimension(&self, s: usize) -> Result<(), ParamError> {
        if self.admits_dimension(s) {
            Ok(())
        } else {
            Err(ParamError::Incompatible {
                k: self.k,
                l: self.l,
                s,
            })
        }
    }

    /// k*n - l, the edge count of a tight graph on n vertices. May be
    /// negative for small n.
    pub fn tight_edge_count(&self, n: usize) -> i64 {
        self.k as i64 * n as i64 - self.l as i64
    }

    /// Maximum multiplicity of a parallel class of s-edges in a sparse
    /// graph: s*k - l.
    pub fn multiplicity_bound(&self, s: usize) -> i64 {
        (s * self.k) as i64 - self.l as i64
    }
}
