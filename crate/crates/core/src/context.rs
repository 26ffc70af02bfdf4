//! Shared computation context: the root datum for a fixed rank plus the
//! memo caches for irreducibles, tensor powers, tensor-product
//! decompositions, duals and tilde-basis expansions. Caches follow a
//! single-writer/many-reader contract: concurrent reads are safe, writes
//! are serialized behind mutexes, and values are immutable Arcs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coordring::PWElement;
use crate::error::KernelError;
use crate::repcore::{Decomposition, DualData, Module};
use crate::rootdata::{build_root_datum, RootDatum};

pub struct Context {
    pub datum: Arc<RootDatum>,
    pub(crate) irreps: Mutex<HashMap<Vec<i64>, Arc<Module>>>,
    pub(crate) tensor_powers: Mutex<HashMap<usize, Arc<Module>>>,
    pub(crate) tensor_decomps: Mutex<HashMap<(Vec<i64>, Vec<i64>), Arc<(Arc<Module>, Decomposition)>>>,
    pub(crate) duals: Mutex<HashMap<Vec<i64>, Arc<DualData>>>,
    pub(crate) tilde_tables: Mutex<HashMap<Vec<i64>, Arc<Vec<Vec<PWElement>>>>>,
}

impl Context {
    pub fn new(n: usize) -> Result<Self, KernelError> {
        Ok(Context {
            datum: Arc::new(build_root_datum(n)?),
            irreps: Mutex::new(HashMap::new()),
            tensor_powers: Mutex::new(HashMap::new()),
            tensor_decomps: Mutex::new(HashMap::new()),
            duals: Mutex::new(HashMap::new()),
            tilde_tables: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.datum.n
    }
}
