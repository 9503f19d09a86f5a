// Copyright 2026 The racsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RACSIM_CONCAT_H
#define RACSIM_CONCAT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace racsim {

// Tree of 2->1 and 3->1 subunits. Each subunit encodes its children's bits
// (input bits at leaves, or lower subunits' messages) into one message bit.
class ConcatTree {
   public:
    struct Child {
        bool is_leaf;
        int index;  // leaf number (left to right) or node number
    };
    struct Node {
        int arity;
        std::vector<Child> children;
    };

    // Parses nested arity lists with '.' for a leaf, e.g. "[2,[2,.,.],[2,.,.]]".
    // Throws std::invalid_argument with the offending offset on bad input.
    static ConcatTree parse(std::string_view text);

    std::string to_string() const;

    int leaves() const { return leaf_count_; }
    int root() const { return root_; }
    const std::vector<Node> &nodes() const { return nodes_; }

    // Node path from the root down to the parent of `leaf`, with the child
    // position taken at every step.
    struct Step {
        int node;
        int position;
    };
    std::vector<Step> path_to(int leaf) const;

    // Children before parents.
    std::vector<int> post_order() const;

   private:
    friend ConcatTree build_tree(int n);
    int add_node(int arity);

    std::vector<Node> nodes_;
    int root_ = -1;
    int leaf_count_ = 0;
};

struct DepthProfile {
    int k;  // arity-2 ancestors
    int j;  // arity-3 ancestors
};

// Least m >= n of the form 2^k 3^j.
int smooth_ceiling(int n);
bool is_smooth(int n);

// Balanced tree for n = 2^k 3^j: arity-3 layers next to the leaves, then
// arity-2 layers up to the root. Throws for non-smooth n.
ConcatTree build_tree(int n);

std::vector<DepthProfile> depth_profile(const ConcatTree &t);

// ½(1 + 2^{-k/2} 3^{-j/2})
double pkj(int k, int j);

std::vector<double> analytic_per_bit(const ConcatTree &t);

// ½ + 1/(2 sqrt n)
double quantum_bound(int n);

// ½ + 1/(2 sqrt m) with m = smooth_ceiling(n).
double padded_lower_bound(int n);

enum class SubunitEngine {
    kBorn,  // Alice's outcome uniform, Bob's conditional Born law
    kMzi,   // joint path-spin Born sampling of the apparatus state
};

struct SimulationOptions {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    SubunitEngine engine = SubunitEngine::kBorn;
    // Assigns the real input bits to a fresh uniformly random set of leaves on
    // every shot (shared-seed stand-in for shared randomness).
    bool shared_permutation = false;
    int workers = 0;
};

struct SimulationResult {
    std::uint64_t shots = 0;
    std::uint64_t successes = 0;
    double rate() const { return shots ? double(successes) / double(shots) : 0.0; }
    bool operator==(const SimulationResult &) const = default;
};

// Shot-level run of the concatenated protocol for one input string (x_1
// first, length <= leaves; missing leaves hold constant 0) and one queried
// bit. Throws std::invalid_argument for an out-of-range query.
SimulationResult simulate(const ConcatTree &t, const std::vector<int> &input, int query,
                          const SimulationOptions &options);

namespace reference {

SimulationResult simulate(const ConcatTree &t, const std::vector<int> &input, int query,
                          const SimulationOptions &options);

}  // namespace reference

}  // namespace racsim

#endif
