//! Strongly connected components (iterative Tarjan).

/// Returns `(component_of, component_count)` for the directed graph with
/// vertices `0..n` and successor lists `succ`. Components are numbered in
/// reverse topological order of the condensation.
pub fn tarjan(n: usize, succ: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    // (vertex, next edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// True when the graph has a cycle (a self-loop counts).
pub fn has_cycle(n: usize, succ: &[Vec<usize>]) -> bool {
    let (comp, _) = tarjan(n, succ);
    (0..n).any(|v| succ[v].iter().any(|&w| comp[w] == comp[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycles_and_a_bridge() {
        // 0 <-> 1 -> 2 <-> 3, 4 isolated
        let succ = vec![vec![1], vec![0, 2], vec![3], vec![2], vec![]];
        let (comp, count) = tarjan(5, &succ);
        assert_eq!(count, 3);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert_ne!(comp[1], comp[2]);
        // reverse topological: the sink component {2,3} is found first
        assert!(comp[2] < comp[0]);
    }

    #[test]
    fn cycles() {
        assert!(!has_cycle(3, &[vec![1], vec![2], vec![]]));
        assert!(has_cycle(1, &[vec![0]]));
        assert!(has_cycle(3, &[vec![1], vec![2], vec![0]]));
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let succ: Vec<Vec<usize>> = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![0] }).collect();
        let (_, count) = tarjan(n, &succ);
        assert_eq!(count, 1);
    }
}
