#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmk/counting.hpp"
#include "qmk/kernels.hpp"
#include "qmk/scalar.hpp"

namespace qmk {

// Exact operation tallies for one kernel evaluation over the counting
// scalar. Plan constants are embedded tally-free, so precomputation is not
// charged to the kernel.
OpTally count_ops(KernelId id);

// ---------------------------------------------------------------------------
// Dataflow netlist: the fully parallel hardware realization of a kernel as a
// DAG of constant multipliers and adders. Multiplier constants are symbolic
// labels bound at evaluation time; structural sign changes are carried on
// adder inputs, never as separate nodes.

enum class NodeKind { input, const_mult, add, output };

struct SignedRef {
    int id;
    int sign; // +1 or -1
};

struct GraphNode {
    int id;
    NodeKind kind;
    std::string const_label;       // const_mult only
    std::vector<SignedRef> inputs; // empty for input nodes
};

struct DataflowGraph {
    KernelId kernel;
    std::vector<GraphNode> nodes; // ids are dense and topologically ordered
    std::vector<int> outputs;     // exactly 4 output-node ids
};

DataflowGraph build_graph(KernelId id);

struct CostReport {
    int mult_count = 0;
    std::map<int, int> adder_hist; // fan-in -> count
    int two_input_equiv = 0;       // sum of (fan-in - 1)
    int depth_mult = 0;            // multiplier stages on the critical path
    int depth_add = 0;             // adder stages on the critical path
};

CostReport cost_report(const DataflowGraph& g);

enum class ExportFormat { dot, json };

// Deterministic serialization; identical graphs give byte-identical text.
std::string export_graph(const DataflowGraph& g, ExportFormat format);

// Constant bindings for evaluation.
template <ScalarRing S>
using ConstBindings = std::map<std::string, S>;

template <ScalarRing S>
ConstBindings<S> graph_bindings(const LeftPlan<S>& p) {
    return {{"alpha", p.alpha}, {"d1", p.d1}, {"d2", p.d2}};
}

template <ScalarRing S>
ConstBindings<S> graph_bindings(const RightPlan<S>& p) {
    return {{"gamma", p.gamma}, {"e1", p.e1}, {"e2", p.e2}};
}

template <ScalarRing S>
ConstBindings<S> graph_bindings(const TwoSidedPlan<S>& p) {
    ConstBindings<S> b;
    for (int i = 0; i < 9; ++i) b.emplace("k" + std::to_string(i), p.k[i]);
    return b;
}

template <ScalarRing S>
ConstBindings<S> graph_bindings(const Quaternion<S>& p) {
    return {{"p0", p.q0}, {"p1", p.q1}, {"p2", p.q2}, {"p3", p.q3}};
}

// Runs the netlist as a circuit simulator: nodes in id order, each consuming
// already-computed operands. Throws on unbound constants and on structurally
// invalid graphs (forward references, i.e. cycles in disguise).
template <ScalarRing S>
std::array<S, 4> evaluate_graph(const DataflowGraph& g, const std::array<S, 4>& inputs,
                                const ConstBindings<S>& consts) {
    std::vector<S> value;
    value.reserve(g.nodes.size());
    int next_input = 0;
    for (const GraphNode& node : g.nodes) {
        if (node.id != static_cast<int>(value.size()))
            throw std::runtime_error("netlist node ids are not dense");
        for (const SignedRef& ref : node.inputs)
            if (ref.id < 0 || ref.id >= node.id)
                throw std::runtime_error("netlist is not topologically ordered");

        switch (node.kind) {
        case NodeKind::input:
            if (next_input >= 4) throw std::runtime_error("more than 4 input nodes");
            value.push_back(inputs[next_input++]);
            break;
        case NodeKind::const_mult: {
            auto it = consts.find(node.const_label);
            if (it == consts.end())
                throw std::runtime_error("unbound constant: " + node.const_label);
            value.push_back(it->second * value[node.inputs.at(0).id]);
            break;
        }
        case NodeKind::add: {
            bool have = false;
            S acc{};
            for (const SignedRef& ref : node.inputs) {
                const S& v = value[ref.id];
                if (!have) {
                    acc = ref.sign > 0 ? v : -v;
                    have = true;
                } else {
                    acc = ref.sign > 0 ? acc + v : acc - v;
                }
            }
            if (!have) throw std::runtime_error("adder with no inputs");
            value.push_back(acc);
            break;
        }
        case NodeKind::output:
            value.push_back(value[node.inputs.at(0).id]);
            break;
        }
    }
    if (g.outputs.size() != 4) throw std::runtime_error("netlist must have 4 outputs");
    std::array<S, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = value.at(g.outputs[i]);
    return out;
}

} // namespace qmk
