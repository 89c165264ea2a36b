//! Text printed by `sharpblunt explain`.

pub const LEDGER: &str = "\
Conventions used by sharpblunt

Diagrams
  Untwisted affine diagrams. Node 0 carries -theta (theta the highest root),
  nodes 1..n are the simple roots in Bourbaki order. The mark c(s) of node s
  is the coefficient of the highest root, with c(0) = 1. boc is the largest
  mark.

Fundamental groups
  Omega' of W is the weight lattice modulo the root lattice of the finite
  root system of W. Elements are written in Smith-normal-form coordinates;
  the canonical index of an element is its position in the lexicographic
  list of these coordinate tuples. Omega' acts on the affine diagram of W
  and on that of the dual W' through the mark-1 nodes.

Which type --type names
  sharp, strictly-sharp, theta   the group W' carrying I
  blunt, strictly-blunt          the group W carrying J
  bijection                      W; the images live on the dual W'

Omega classes
  trivial / nontrivial           types B, C, E, F, G
  order k                        type A (generator: k = n + 1)
  in-underline                   type D, fixes two or more nodes, not 1
  not-in-underline               type D, fixes at most one node

Sharp modes
  normative  the closed-form list (the default; the correspondence uses it)
  literal    every I satisfying the definition directly. This adds, for
             example, the middle node of C_n (n even, omega != 1), two extra
             classes on E6 and E7 with omega = 1, and the empty I for every
             omega on type A. verify lists these as discrepancies; they
             never fail it.

Parameters
  Sharp triples of B, C, D carry (t, r), blunt triples carry (x, y), both
  read off the ranks of the components. Degenerate symbols are normalized:
  D0 = D1 = B0 = A0 = A-1 = 1, D2 = A1xA1, D3 = A3, B1 = C1 = A1.
  For D, y = 0 is allowed on the blunt side.

Correspondence
  iota sends a blunt class to a sharp class: through the unique sharp class
  when boc >= 3, through the parameter map f otherwise. For B and C with
  omega != 1, f sends some blunt classes to (t, 1). The closed-form sharp
  list requires r >= 3 there, so these images are not listed although
  literal mode accepts them. The first is B4 (7,5) -> C4 (6,1). bijection
  prints them as unmapped and verify reports them as iota failures.

theta
  For boc >= 3, theta is the multiset of marks of the deleted nodes of the
  blunt classes of the dual. Repeated values are tagged 1, 2, ... in order
  of the deleted node. For boc <= 2 theta is a single number, 1 or 2. Which
  one is not determined here, so it is printed as '1 or 2'.

Output
  JSON output is one object per line with a schema tag. Integers above
  2^53 - 1 are written as strings. verify writes one report; it is
  byte-identical across runs unless --timings is given.

Exit codes
  0 success, 1 verification failure or computation error, 2 usage error.
";
