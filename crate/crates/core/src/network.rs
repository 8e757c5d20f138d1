//! Two-terminal inductor network and its nodal solver.
//!
//! The solver provides a route to the total inductance that is independent of
//! the series/parallel closed form: uncoupled inductors reduce exactly like
//! conductance networks, so the two-terminal equivalent is computed by
//! assembling the node equations with branch weights 1/L, injecting unit flow
//! at the input terminal, extracting it at the output, and reading off the
//! potential difference. The linear system is dense and tiny (at most a few
//! nodes), so it is solved by direct Gaussian elimination with partial
//! pivoting; determinism matters more than speed here.

use crate::switch::{SwitchConfiguration, SwitchError};

#[derive(Debug, thiserror::Error)]
pub enum NetworkError {
    #[error("branch inductance must be positive and finite, got {0}")]
    NonPositiveBranch(f64),
    #[error("branch endpoints must be distinct nodes")]
    SelfLoop,
    #[error("node id {0} does not exist in this network")]
    UnknownNode(usize),
    #[error("input and output terminals are not connected")]
    DisconnectedTerminals,
    #[error("node equations are singular; the network has no two-terminal equivalent")]
    SingularSystem,
    #[error(transparent)]
    Switch(#[from] SwitchError),
}

/// Opaque node handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(&self) -> usize {
        self.0
    }
}

/// One inductive branch between two nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub a: NodeId,
    pub b: NodeId,
    /// Branch inductance, henries (> 0).
    pub inductance: f64,
}

/// Weighted two-terminal graph of inductors.
#[derive(Debug, Clone, PartialEq)]
pub struct InductorNetwork {
    node_count: usize,
    branches: Vec<Branch>,
}

impl InductorNetwork {
    /// Creates an empty network with the two distinguished terminals.
    pub fn new() -> Self {
        Self {
            node_count: 2,
            branches: Vec::new(),
        }
    }

    /// Input terminal.
    pub fn input(&self) -> NodeId {
        NodeId(0)
    }

    /// Output terminal.
    pub fn output(&self) -> NodeId {
        NodeId(1)
    }

    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId(self.node_count);
        self.node_count += 1;
        id
    }

    pub fn add_branch(&mut self, a: NodeId, b: NodeId, inductance: f64) -> Result<(), NetworkError> {
        if a.0 >= self.node_count {
            return Err(NetworkError::UnknownNode(a.0));
        }
        if b.0 >= self.node_count {
            return Err(NetworkError::UnknownNode(b.0));
        }
        if a == b {
            return Err(NetworkError::SelfLoop);
        }
        if inductance <= 0.0 || !inductance.is_finite() {
            return Err(NetworkError::NonPositiveBranch(inductance));
        }
        self.branches.push(Branch { a, b, inductance });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Two-terminal equivalent inductance between input and output.
    pub fn effective_inductance(&self) -> Result<f64, NetworkError> {
        effective_inductance(self)
    }
}

impl Default for InductorNetwork {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds the network realizing a canonical configuration: a chain of k
/// series branches from the input, then an m-way parallel bank to the output
/// (the chain end *is* the output when m = 0).
pub fn build_network(
    config: &SwitchConfiguration,
    unit_inductance: f64,
) -> Result<InductorNetwork, NetworkError> {
    if unit_inductance <= 0.0 || !unit_inductance.is_finite() {
        return Err(NetworkError::Switch(SwitchError::NonPositiveUnitInductance(
            unit_inductance,
        )));
    }
    let mut network = InductorNetwork::new();
    let series = config.series_count();
    let parallel = config.parallel_count();

    let mut chain_end = network.input();
    for step in 0..series {
        let last_series = step + 1 == series;
        let next = if last_series && parallel == 0 {
            network.output()
        } else {
            network.add_node()
        };
        network.add_branch(chain_end, next, unit_inductance)?;
        chain_end = next;
    }
    if parallel >= 2 {
        for _ in 0..parallel {
            network.add_branch(chain_end, network.output(), unit_inductance)?;
        }
    }
    Ok(network)
}

/// Two-terminal equivalent inductance via nodal analysis.
pub fn effective_inductance(network: &InductorNetwork) -> Result<f64, NetworkError> {
    for branch in network.branches() {
        if branch.inductance <= 0.0 || !branch.inductance.is_finite() {
            return Err(NetworkError::NonPositiveBranch(branch.inductance));
        }
    }

    // Restrict to the component reachable from the input so floating nodes
    // elsewhere cannot make the grounded system singular.
    let component = reachable_from(network, network.input());
    if !component.contains(&network.output().0) {
        return Err(NetworkError::DisconnectedTerminals);
    }

    // Unknowns: potentials of component nodes, output grounded (dropped).
    let mut index_of = vec![usize::MAX; network.node_count()];
    let mut unknowns = 0;
    for &node in &component {
        if node == network.output().0 {
            continue;
        }
        index_of[node] = unknowns;
        unknowns += 1;
    }

    let mut matrix = vec![vec![0.0f64; unknowns]; unknowns];
    let mut rhs = vec![0.0f64; unknowns];
    for branch in network.branches() {
        let weight = 1.0 / branch.inductance;
        let ia = index_of[branch.a.0];
        let ib = index_of[branch.b.0];
        if ia != usize::MAX {
            matrix[ia][ia] += weight;
            if ib != usize::MAX {
                matrix[ia][ib] -= weight;
            }
        }
        if ib != usize::MAX {
            matrix[ib][ib] += weight;
            if ia != usize::MAX {
                matrix[ib][ia] -= weight;
            }
        }
    }
    let input_row = index_of[network.input().0];
    rhs[input_row] = 1.0;

    let potentials = solve_dense(matrix, rhs)?;
    Ok(potentials[input_row])
}

fn reachable_from(network: &InductorNetwork, start: NodeId) -> Vec<usize> {
    let mut adjacency = vec![Vec::new(); network.node_count()];
    for branch in network.branches() {
        adjacency[branch.a.0].push(branch.b.0);
        adjacency[branch.b.0].push(branch.a.0);
    }
    let mut seen = vec![false; network.node_count()];
    let mut stack = vec![start.0];
    seen[start.0] = true;
    let mut component = Vec::new();
    while let Some(node) = stack.pop() {
        component.push(node);
        for &next in &adjacency[node] {
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    component
}

// Gaussian elimination with partial pivoting on a dense system.
fn solve_dense(mut matrix: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Result<Vec<f64>, NetworkError> {
    let n = rhs.len();
    let scale = matrix
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if scale == 0.0 {
        return Err(NetworkError::SingularSystem);
    }

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| matrix[a][col].abs().total_cmp(&matrix[b][col].abs()))
            .expect("non-empty pivot range");
        if matrix[pivot_row][col].abs() <= scale * 1e-14 {
            return Err(NetworkError::SingularSystem);
        }
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);

        let pivot_values = matrix[col].clone();
        let pivot = pivot_values[col];
        for row in col + 1..n {
            let factor = matrix[row][col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for (value, pivot_value) in matrix[row][col..].iter_mut().zip(&pivot_values[col..]) {
                *value -= factor * pivot_value;
            }
            rhs[row] -= factor * rhs[col];
        }
    }

    let mut solution = vec![0.0f64; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for col in row + 1..n {
            acc -= matrix[row][col] * solution[col];
        }
        solution[row] = acc / matrix[row][row];
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::switch::{enumerate_steps, total_inductance};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn config(k: usize, m: usize, n: usize) -> SwitchConfiguration {
        SwitchConfiguration::new(k, m, n).unwrap()
    }

    #[test]
    fn series_chain_structure() {
        let net = build_network(&config(2, 0, 5), 1.0).unwrap();
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.branches().len(), 2);
    }

    #[test]
    fn chain_plus_bank_structure() {
        let net = build_network(&config(1, 4, 5), 1.0).unwrap();
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.branches().len(), 5);
        let l = net.effective_inductance().unwrap();
        assert!((l - 1.25).abs() < 1e-12);
    }

    #[test]
    fn pure_bank_structure() {
        let net = build_network(&config(0, 2, 5), 1.0).unwrap();
        assert_eq!(net.node_count(), 2);
        assert_eq!(net.branches().len(), 2);
        let l = net.effective_inductance().unwrap();
        assert!((l - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_branch_is_identity() {
        let mut net = InductorNetwork::new();
        net.add_branch(net.input(), net.output(), 7e-9).unwrap();
        assert_eq!(net.effective_inductance().unwrap(), 7e-9);
    }

    #[test]
    fn disconnected_terminals_are_reported() {
        let net = InductorNetwork::new();
        assert!(matches!(
            net.effective_inductance(),
            Err(NetworkError::DisconnectedTerminals)
        ));
    }

    #[test]
    fn floating_component_does_not_break_the_solve() {
        let mut net = InductorNetwork::new();
        net.add_branch(net.input(), net.output(), 2.0).unwrap();
        let a = net.add_node();
        let b = net.add_node();
        net.add_branch(a, b, 1.0).unwrap();
        assert!((net.effective_inductance().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_branches_are_rejected() {
        let mut net = InductorNetwork::new();
        assert!(matches!(
            net.add_branch(net.input(), net.output(), 0.0),
            Err(NetworkError::NonPositiveBranch(_))
        ));
        assert!(matches!(
            net.add_branch(net.input(), net.input(), 1.0),
            Err(NetworkError::SelfLoop)
        ));
        assert!(matches!(
            net.add_branch(net.input(), NodeId(9), 1.0),
            Err(NetworkError::UnknownNode(9))
        ));
    }

    #[test]
    fn wheatstone_bridge_solves() {
        // Non-series/parallel topology: balanced bridge of 1 H arms with a
        // 5 H bridge branch reduces to 1 H exactly.
        let mut net = InductorNetwork::new();
        let a = net.add_node();
        let b = net.add_node();
        net.add_branch(net.input(), a, 1.0).unwrap();
        net.add_branch(net.input(), b, 1.0).unwrap();
        net.add_branch(a, net.output(), 1.0).unwrap();
        net.add_branch(b, net.output(), 1.0).unwrap();
        net.add_branch(a, b, 5.0).unwrap();
        assert!((net.effective_inductance().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn solver_matches_closed_form_for_random_configurations() {
        let mut rng = StdRng::seed_from_u64(0x5eed_c011);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(1..=8usize);
            let table = enumerate_steps(n, 1.0).unwrap();
            let entry = table.entries()[rng.random_range(0..table.len())];
            let unit = 10f64.powf(rng.random_range(-9.0..0.0));
            let closed = total_inductance(&entry.configuration, unit).unwrap();
            let solved = build_network(&entry.configuration, unit)
                .unwrap()
                .effective_inductance()
                .unwrap();
            assert!(
                ((solved - closed) / closed).abs() < 1e-9,
                "n={n} config={:?} closed={closed} solved={solved}",
                entry.configuration
            );
            checked += 1;
        }
    }
}
