#pragma once

#include <string>
#include <vector>

#include "reflsos/error.hpp"

namespace rsos {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

int partition_sum(const Partition& p);
bool is_partition(const Partition& p);

// Ordered pair of partitions; either component may be empty.
struct MultiPartition {
  Partition first, second;
  int size() const { return partition_sum(first) + partition_sum(second); }
  bool operator==(const MultiPartition&) const = default;
  bool operator<(const MultiPartition&) const = default;
};

// Standard filling of a (multi)partition shape. Single-partition tableaux keep
// rows2 empty. Entries over the two components are 1..n, each exactly once,
// rows increase left to right, columns top to bottom.
struct StandardTableau {
  MultiPartition shape;
  std::vector<std::vector<int>> rows;   // first component
  std::vector<std::vector<int>> rows2;  // second component
  int size() const;
  bool operator==(const StandardTableau&) const = default;
};

// All partitions of n, reverse-lexicographic: (n) first, (1^n) last.
std::vector<Partition> enumerate_partitions(int n);

// All ordered pairs (lambda, mu) with |lambda| + |mu| = n.
// Ordered by |mu| ascending, then lambda reverse-lex, then mu reverse-lex.
std::vector<MultiPartition> enumerate_multipartitions(int n);

bool is_standard(const StandardTableau& t);

// All standard tableaux of the shape, sorted by row-reading word
// (component 1 rows top to bottom, then component 2), lexicographically.
std::vector<StandardTableau> enumerate_syt(const MultiPartition& shape);
std::vector<StandardTableau> enumerate_syt(const Partition& shape);

// Column word: leftmost column read bottom to top, then the next column, ...;
// component 1 first, then component 2.
std::vector<int> word(const StandardTableau& t);

struct ChargeData {
  std::vector<int> index;  // index(k) stored at the position of k in the word
  int charge = 0;
};

// index(1) = 0; index(k+1) = index(k) if k+1 sits to the right of k, else
// index(k) + 1. Entries are placed at the positions of the values.
ChargeData index_and_charge(const std::vector<int>& w);

int charge(const StandardTableau& t);

// Degree of the catalog generator attached to S: ch(S) for the symmetric
// family; 2 ch(S) + |second component| for the signed families.
int generator_degree_sym(const StandardTableau& s);
int generator_degree_signed(const StandardTableau& s);

// Tableaux whose first row begins with 1..k (single shapes), resp. whose first
// component's first row begins with the k smallest entries of that component.
bool in_pi_set(const StandardTableau& t, int k);
std::vector<StandardTableau> pi_set(const MultiPartition& shape, int k);

// Shape with one box appended to the first row (of the first component).
MultiPartition shape_plus_one(const MultiPartition& shape);

// Degree-preserving stabilization step: remaps a standard tableau of shape
// lambda (n boxes) to one of lambda+1 (n+1 boxes). Charge is preserved; the
// index word gains one zero. Errors if the image fails to be standard.
StandardTableau rho_step(const StandardTableau& t);

// Swap the two components of a multipartition tableau.
StandardTableau swap_components(const StandardTableau& t);

std::string partition_str(const Partition& p);
std::string shape_str(const MultiPartition& s);

}  // namespace rsos
