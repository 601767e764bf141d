use crate::graph::Graph;

/// Connected components of the subgraph induced by a vertex mask.
pub struct Components {
    /// Component index per vertex, `None` outside the mask.
    pub label: Vec<Option<usize>>,
    pub sizes: Vec<usize>,
}

impl Components {
    /// Index of the largest component; the lowest index wins ties.
    pub fn largest(&self) -> Option<usize> {
        let max = *self.sizes.iter().max()?;
        self.sizes.iter().position(|&s| s == max)
    }
}

pub fn connected_components(g: &Graph, alive: &[bool]) -> Components {
    let n = g.n();
    let mut label = vec![None; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if !alive[s] || label[s].is_some() {
            continue;
        }
        let c = sizes.len();
        let mut size = 0;
        label[s] = Some(c);
        stack.push(s);
        while let Some(v) = stack.pop() {
            size += 1;
            for &u in g.neighbors(v) {
                if alive[u] && label[u].is_none() {
                    label[u] = Some(c);
                    stack.push(u);
                }
            }
        }
        sizes.push(size);
    }
    Components { label, sizes }
}
