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

#include "racsim/concat.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <omp.h>

#include "racsim/bell.h"
#include "racsim/mzi.h"
#include "racsim/qrac.h"
#include "racsim/rng.h"

using namespace racsim;

namespace {

class TreeParser {
   public:
    explicit TreeParser(std::string_view text) : text_(text) {
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            pos_++;
        }
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw std::invalid_argument("tree description: " + what + " at offset " + std::to_string(pos_));
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        pos_++;
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    int read_arity() {
        skip_space();
        if (pos_ >= text_.size() || (text_[pos_] != '2' && text_[pos_] != '3')) {
            fail("arity must be 2 or 3");
        }
        return text_[pos_++] - '0';
    }

    void advance() {
        pos_++;
    }

   private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

struct SubunitTables {
    // dot[i][k] = A_i . B_k for the default bases of the subunit's arity.
    std::vector<std::vector<double>> dot;
    // Joint (path, spin) law on the singlet with path analyzer -A_i, spin B_k.
    std::vector<std::vector<Eigen::Vector4d>> joint;
};

SubunitTables make_tables(int arity) {
    MeasurementBases b = default_bases(arity);
    PureState singlet = singlet_state();
    SubunitTables t;
    for (const auto &a : b.alice) {
        std::vector<double> row;
        std::vector<Eigen::Vector4d> jrow;
        for (const auto &bob : b.bob) {
            row.push_back(a.dot(bob));
            jrow.push_back(joint_distribution(singlet, -a, bob));
        }
        t.dot.push_back(row);
        t.joint.push_back(jrow);
    }
    return t;
}

struct Engine {
    const ConcatTree &tree;
    std::vector<int> leaf_bits;  // input padded to the leaf count
    int query;
    SimulationOptions options;
    std::array<SubunitTables, 4> tables;
    std::vector<int> order;

    Engine(const ConcatTree &t, const std::vector<int> &input, int q, const SimulationOptions &opt)
        : tree(t), query(q), options(opt) {
        if (input.size() > std::size_t(t.leaves())) {
            throw std::invalid_argument("input has more bits than the tree has leaves");
        }
        if (q < 0 || q >= int(input.size())) {
            throw std::invalid_argument("query index " + std::to_string(q) + " is out of range for " +
                                        std::to_string(input.size()) + " input bits");
        }
        for (int bit : input) {
            if (bit != 0 && bit != 1) {
                throw std::invalid_argument("input bits must be 0 or 1");
            }
        }
        if (opt.shots == 0) {
            throw std::invalid_argument("simulate needs at least one shot");
        }
        leaf_bits = input;
        tables[2] = make_tables(2);
        tables[3] = make_tables(3);
        order = t.post_order();
    }

    bool run_shot(std::uint64_t shot) const {
        KeyedRng rng(options.seed, shot);
        const int leaves = tree.leaves();

        std::vector<int> placement(leaves);
        for (int r = 0; r < leaves; r++) {
            placement[r] = r;
        }
        if (options.shared_permutation) {
            for (int r = leaves - 1; r > 0; r--) {
                int s = int(rng.uniform() * (r + 1));
                std::swap(placement[r], placement[std::min(s, r)]);
            }
        }
        std::vector<int> at_leaf(leaves, 0);
        for (int r = 0; r < int(leaf_bits.size()); r++) {
            at_leaf[placement[r]] = leaf_bits[r];
        }
        const int query_leaf = placement[query];
        const auto path = tree.path_to(query_leaf);

        const auto &nodes = tree.nodes();
        std::vector<int> on_path(nodes.size(), -1);
        for (const auto &step : path) {
            on_path[step.node] = step.position;
        }

        std::vector<int> message(nodes.size());
        std::vector<int> alice(nodes.size());
        std::vector<int> klass(nodes.size());
        std::vector<int> bob(nodes.size(), -1);
        for (int v : order) {
            const auto &node = nodes[v];
            std::uint32_t x = 0;
            for (const auto &c : node.children) {
                x = (x << 1) | std::uint32_t(c.is_leaf ? at_leaf[c.index] : message[c.index]);
            }
            klass[v] = int(class_index(x, node.arity));
            const int first = input_bit(x, node.arity, 0);
            if (options.engine == SubunitEngine::kMzi && on_path[v] >= 0) {
                auto [a, y] = pick_outcome(tables[node.arity].joint[klass[v]][on_path[v]], rng.uniform());
                alice[v] = a;
                bob[v] = y;
            } else {
                alice[v] = rng.bit();
            }
            message[v] = alice[v] ^ first;
        }

        int received = message[tree.root()];
        for (const auto &step : path) {
            const int v = step.node;
            int y = bob[v];
            if (y < 0) {
                double dot = tables[nodes[v].arity].dot[klass[v]][step.position];
                double p0 = 0.5 * (1.0 + (alice[v] ? -dot : dot));
                y = rng.uniform() < p0 ? 0 : 1;
            }
            received = y ^ received;
        }
        return received == at_leaf[query_leaf];
    }
};

}  // namespace

int ConcatTree::add_node(int arity) {
    nodes_.push_back(Node{arity, {}});
    return int(nodes_.size()) - 1;
}

ConcatTree ConcatTree::parse(std::string_view text) {
    ConcatTree t;
    TreeParser p(text);
    std::function<int()> parse_node = [&]() -> int {
        p.expect('[');
        int arity = p.read_arity();
        int id = t.add_node(arity);
        for (int c = 0; c < arity; c++) {
            p.expect(',');
            if (p.peek() == '.') {
                p.advance();
                t.nodes_[id].children.push_back(Child{true, t.leaf_count_++});
            } else if (p.peek() == '[') {
                int child = parse_node();
                t.nodes_[id].children.push_back(Child{false, child});
            } else {
                p.fail("expected '.' or '['");
            }
        }
        p.expect(']');
        return id;
    };
    t.root_ = parse_node();
    if (!p.at_end()) {
        p.fail("trailing characters");
    }
    return t;
}

std::string ConcatTree::to_string() const {
    std::function<std::string(int)> render = [&](int v) {
        std::string out = "[" + std::to_string(nodes_[v].arity);
        for (const auto &c : nodes_[v].children) {
            out += ",";
            out += c.is_leaf ? "." : render(c.index);
        }
        return out + "]";
    };
    return render(root_);
}

std::vector<ConcatTree::Step> ConcatTree::path_to(int leaf) const {
    if (leaf < 0 || leaf >= leaf_count_) {
        throw std::invalid_argument("leaf index out of range");
    }
    std::vector<Step> path;
    std::function<bool(int)> find = [&](int v) {
        for (int pos = 0; pos < int(nodes_[v].children.size()); pos++) {
            const auto &c = nodes_[v].children[pos];
            path.push_back(Step{v, pos});
            if (c.is_leaf ? c.index == leaf : find(c.index)) {
                return true;
            }
            path.pop_back();
        }
        return false;
    };
    find(root_);
    return path;
}

std::vector<int> ConcatTree::post_order() const {
    std::vector<int> out;
    std::function<void(int)> walk = [&](int v) {
        for (const auto &c : nodes_[v].children) {
            if (!c.is_leaf) {
                walk(c.index);
            }
        }
        out.push_back(v);
    };
    walk(root_);
    return out;
}

bool racsim::is_smooth(int n) {
    if (n < 1) {
        return false;
    }
    while (n % 2 == 0) {
        n /= 2;
    }
    while (n % 3 == 0) {
        n /= 3;
    }
    return n == 1;
}

int racsim::smooth_ceiling(int n) {
    if (n < 2) {
        throw std::invalid_argument("smooth_ceiling: n must be at least 2");
    }
    int m = n;
    while (!is_smooth(m)) {
        m++;
    }
    return m;
}

ConcatTree racsim::build_tree(int n) {
    if (n < 2 || !is_smooth(n)) {
        throw std::invalid_argument("build_tree: n = " + std::to_string(n) +
                                    " is not of the form 2^k 3^j; pad to smooth_ceiling(n) first");
    }
    ConcatTree t;
    t.leaf_count_ = n;
    std::vector<ConcatTree::Child> layer;
    for (int leaf = 0; leaf < n; leaf++) {
        layer.push_back(ConcatTree::Child{true, leaf});
    }
    while (layer.size() > 1) {
        const int arity = layer.size() % 3 == 0 ? 3 : 2;
        std::vector<ConcatTree::Child> next;
        for (std::size_t s = 0; s < layer.size(); s += arity) {
            int id = t.add_node(arity);
            t.nodes_[id].children.assign(layer.begin() + s, layer.begin() + s + arity);
            next.push_back(ConcatTree::Child{false, id});
        }
        layer = std::move(next);
    }
    t.root_ = layer.front().index;
    return t;
}

std::vector<DepthProfile> racsim::depth_profile(const ConcatTree &t) {
    std::vector<DepthProfile> out(t.leaves(), DepthProfile{0, 0});
    std::function<void(int, int, int)> walk = [&](int v, int k, int j) {
        const auto &node = t.nodes()[v];
        int k2 = k + (node.arity == 2);
        int j2 = j + (node.arity == 3);
        for (const auto &c : node.children) {
            if (c.is_leaf) {
                out[c.index] = DepthProfile{k2, j2};
            } else {
                walk(c.index, k2, j2);
            }
        }
    };
    walk(t.root(), 0, 0);
    return out;
}

double racsim::pkj(int k, int j) {
    if (k < 0 || j < 0) {
        throw std::invalid_argument("pkj: stage counts must be non-negative");
    }
    return 0.5 * (1.0 + std::pow(2.0, -0.5 * k) * std::pow(3.0, -0.5 * j));
}

std::vector<double> racsim::analytic_per_bit(const ConcatTree &t) {
    std::vector<double> out;
    for (const auto &d : depth_profile(t)) {
        out.push_back(pkj(d.k, d.j));
    }
    return out;
}

double racsim::quantum_bound(int n) {
    if (n < 2) {
        throw std::invalid_argument("quantum_bound: n must be at least 2");
    }
    return 0.5 + 0.5 / std::sqrt(double(n));
}

double racsim::padded_lower_bound(int n) {
    return quantum_bound(smooth_ceiling(n));
}

SimulationResult racsim::reference::simulate(const ConcatTree &t, const std::vector<int> &input, int query,
                                             const SimulationOptions &options) {
    Engine engine(t, input, query, options);
    SimulationResult r;
    r.shots = options.shots;
    for (std::uint64_t s = 0; s < options.shots; s++) {
        r.successes += engine.run_shot(s);
    }
    return r;
}

SimulationResult racsim::simulate(const ConcatTree &t, const std::vector<int> &input, int query,
                                  const SimulationOptions &options) {
    Engine engine(t, input, query, options);
    const int threads = options.workers > 0 ? options.workers : omp_get_max_threads();
    std::uint64_t hits = 0;
#pragma omp parallel for num_threads(threads) reduction(+ : hits) schedule(static)
    for (std::int64_t s = 0; s < std::int64_t(options.shots); s++) {
        hits += engine.run_shot(std::uint64_t(s));
    }
    return SimulationResult{options.shots, hits};
}
