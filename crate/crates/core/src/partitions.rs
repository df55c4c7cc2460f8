//! Set-partition enumeration in restricted-growth-string order.

/// Visits every partition of `{0, .., n-1}` into at most `max_blocks`
/// blocks, in lexicographic order of the restricted growth string (block
/// ids numbered in first-use order). `visit` receives the assignment and
/// the block count; returning `false` stops the walk early.
pub fn for_each_partition(
    n: usize,
    max_blocks: usize,
    visit: &mut dyn FnMut(&[usize], usize) -> bool,
) {
    if n == 0 {
        visit(&[], 0);
        return;
    }
    if max_blocks == 0 {
        return;
    }
    let mut assign = vec![0usize; n];
    rec(1, 1, &mut assign, max_blocks, visit);
}

fn rec(
    pos: usize,
    used: usize,
    assign: &mut Vec<usize>,
    max_blocks: usize,
    visit: &mut dyn FnMut(&[usize], usize) -> bool,
) -> bool {
    if pos == assign.len() {
        return visit(assign, used);
    }
    let top = if used < max_blocks { used } else { used - 1 };
    for c in 0..=top {
        assign[pos] = c;
        let next_used = used.max(c + 1);
        if !rec(pos + 1, next_used, assign, max_blocks, visit) {
            return false;
        }
    }
    true
}
