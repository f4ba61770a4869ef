//! Small named graphs shared by the unit tests.

use crate::graph::Graph;

pub(crate) fn petersen() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
    .unwrap()
}

/// Triangle 0,1,2 with pendant 3 attached at 0.
pub(crate) fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
}

/// Center 0 with three legs of length two: 1-2, 3-4, 5-6 (leaves 2, 4, 6).
pub(crate) fn spider_three_legs_of_two() -> Graph {
    Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap()
}
