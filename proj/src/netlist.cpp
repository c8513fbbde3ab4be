#include "qmk/netlist.hpp"

#include <algorithm>
#include <sstream>

namespace qmk {

OpTally count_ops(KernelId id) {
    OpTally tally;
    const CountScalar v{tally};
    const CountScalar c = CountScalar::constant();
    const Quaternion<CountScalar> q{v, v, v, v};

    switch (id) {
    case KernelId::direct: {
        const Quaternion<CountScalar> p{c, c, c, c};
        mul_direct(p, q);
        break;
    }
    case KernelId::sq: {
        const LeftPlan<CountScalar> plan{c, c, c};
        left_mul(plan, q);
        break;
    }
    case KernelId::qt: {
        const RightPlan<CountScalar> plan{c, c, c};
        right_mul(q, plan);
        break;
    }
    case KernelId::sqt: {
        const TwoSidedPlan<CountScalar> plan{{c, c, c, c, c, c, c, c, c}};
        two_sided_mul(plan, q);
        break;
    }
    }
    return tally;
}

namespace {

class GraphBuilder {
public:
    explicit GraphBuilder(KernelId id) { g_.kernel = id; }

    int input() { return push({NodeKind::input, "", {}}); }

    int mult(const std::string& label, int operand) {
        return push({NodeKind::const_mult, label, {{operand, 1}}});
    }

    int add(std::vector<SignedRef> operands) {
        return push({NodeKind::add, "", std::move(operands)});
    }

    void output(int operand) {
        g_.outputs.push_back(push({NodeKind::output, "", {{operand, 1}}}));
    }

    DataflowGraph take() { return std::move(g_); }

private:
    struct Proto {
        NodeKind kind;
        std::string label;
        std::vector<SignedRef> inputs;
    };

    int push(Proto p) {
        const int id = static_cast<int>(g_.nodes.size());
        g_.nodes.push_back({id, p.kind, std::move(p.label), std::move(p.inputs)});
        return id;
    }

    DataflowGraph g_;
};

DataflowGraph build_one_sided(KernelId id) {
    // Both one-sided kernels share the scheme; they differ in the input
    // pairing and the constant names.
    const bool left = id == KernelId::sq;
    const char* const c0 = left ? "alpha" : "gamma";
    const char* const c1 = left ? "d1" : "e1";
    const char* const c2 = left ? "d2" : "e2";

    GraphBuilder b(id);
    int x[4];
    for (int& i : x) i = b.input();
    const int hi0 = x[0], hi1 = left ? x[1] : x[2];
    const int lo0 = left ? x[2] : x[1], lo1 = x[3];

    const int a1 = b.add({{hi0, 1}, {hi1, -1}});
    const int a2 = b.add({{lo0, 1}, {lo1, -1}});

    const int m1 = b.mult(c0, a1);
    const int m2 = b.mult(c1, hi0);
    const int m3 = b.mult(c2, hi1);
    const int m4 = b.mult(c0, a2);
    const int m5 = b.mult(c1, lo0);
    const int m6 = b.mult(c2, lo1);

    const int z0 = b.add({{m1, -1}, {m2, 1}});
    const int z1 = b.add({{m1, 1}, {m3, 1}});
    const int z2 = b.add({{m4, -1}, {m5, 1}});
    const int z3 = b.add({{m4, 1}, {m6, 1}});

    if (left) {
        b.output(z1); // y0
        b.output(z0); // y1
        b.output(z3); // y2
        b.output(z2); // y3
    } else {
        b.output(z1); // y0 = gamma*q0 - delta*q2
        b.output(z3); // y1
        b.output(z0); // y2
        b.output(z2); // y3
    }
    return b.take();
}

DataflowGraph build_two_sided() {
    GraphBuilder b(KernelId::sqt);
    int x[4];
    for (int& i : x) i = b.input();

    // Pre-stage: six two-input adders. The double difference q0-q1-q2+q3 is
    // realized as a chain off the q0-q1 adder, which is how the scheme lands
    // on 6 two-input adders (full subexpression sharing would need only 5;
    // see cost notes in the report).
    const int p1 = b.add({{x[0], 1}, {x[1], -1}});
    const int p2 = b.add({{x[2], 1}, {x[3], -1}});
    const int p3 = b.add({{x[0], 1}, {x[2], -1}});
    const int p4 = b.add({{x[1], 1}, {x[3], -1}});
    const int c1 = b.add({{p1, 1}, {x[2], -1}});
    const int dd = b.add({{c1, 1}, {x[3], 1}});

    const int operand[9] = {dd, p3, p4, p1, x[0], x[1], p2, x[2], x[3]};
    int m[9];
    for (int i = 0; i < 9; ++i) m[i] = b.mult("k" + std::to_string(i), operand[i]);

    // Post-stage: four 4-input adders (rows of the composed sign matrix).
    const int z0 = b.add({{m[0], 1}, {m[1], -1}, {m[3], -1}, {m[4], 1}});
    const int z1 = b.add({{m[0], -1}, {m[2], -1}, {m[3], 1}, {m[5], 1}});
    const int z2 = b.add({{m[0], -1}, {m[1], 1}, {m[6], -1}, {m[7], 1}});
    const int z3 = b.add({{m[0], 1}, {m[2], 1}, {m[6], 1}, {m[8], 1}});

    b.output(z3);
    b.output(z2);
    b.output(z1);
    b.output(z0);
    return b.take();
}

DataflowGraph build_direct() {
    GraphBuilder b(KernelId::direct);
    int x[4];
    for (int& i : x) i = b.input();

    static const int pattern[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int signs[4][4] = {{1, -1, -1, -1}, {1, 1, -1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}};

    int m[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m[i][j] = b.mult("p" + std::to_string(pattern[i][j]), x[j]);

    for (int i = 0; i < 4; ++i) {
        const int t1 = b.add({{m[i][0], signs[i][0]}, {m[i][1], signs[i][1]}});
        const int t2 = b.add({{m[i][2], signs[i][2]}, {m[i][3], signs[i][3]}});
        b.output(b.add({{t1, 1}, {t2, 1}}));
    }
    return b.take();
}

} // namespace

DataflowGraph build_graph(KernelId id) {
    switch (id) {
    case KernelId::direct: return build_direct();
    case KernelId::sq:
    case KernelId::qt: return build_one_sided(id);
    case KernelId::sqt: return build_two_sided();
    }
    throw std::invalid_argument("bad kernel id");
}

CostReport cost_report(const DataflowGraph& g) {
    CostReport r;
    std::vector<int> dm(g.nodes.size(), 0);
    std::vector<int> da(g.nodes.size(), 0);
    for (const GraphNode& n : g.nodes) {
        int in_m = 0, in_a = 0;
        for (const SignedRef& ref : n.inputs) {
            in_m = std::max(in_m, dm[ref.id]);
            in_a = std::max(in_a, da[ref.id]);
        }
        dm[n.id] = in_m + (n.kind == NodeKind::const_mult ? 1 : 0);
        da[n.id] = in_a + (n.kind == NodeKind::add ? 1 : 0);

        if (n.kind == NodeKind::const_mult) {
            r.mult_count++;
        } else if (n.kind == NodeKind::add) {
            const int fan_in = static_cast<int>(n.inputs.size());
            r.adder_hist[fan_in]++;
            r.two_input_equiv += fan_in - 1;
        }
    }
    for (int out : g.outputs) {
        r.depth_mult = std::max(r.depth_mult, dm[out]);
        r.depth_add = std::max(r.depth_add, da[out]);
    }
    return r;
}

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::input: return "input";
    case NodeKind::const_mult: return "const-mult";
    case NodeKind::add: return "add";
    case NodeKind::output: return "output";
    }
    return "?";
}

std::string to_json(const DataflowGraph& g) {
    std::ostringstream os;
    os << "{\"nodes\":[";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const GraphNode& n = g.nodes[i];
        if (i) os << ",";
        os << "{\"id\":" << n.id << ",\"kind\":\"" << kind_name(n.kind) << "\"";
        if (n.kind == NodeKind::const_mult) os << ",\"const\":\"" << n.const_label << "\"";
        os << ",\"inputs\":[";
        for (std::size_t j = 0; j < n.inputs.size(); ++j) {
            if (j) os << ",";
            os << "{\"id\":" << n.inputs[j].id << ",\"sign\":" << n.inputs[j].sign << "}";
        }
        os << "]}";
    }
    os << "],\"outputs\":[";
    for (std::size_t i = 0; i < g.outputs.size(); ++i) {
        if (i) os << ",";
        os << g.outputs[i];
    }
    os << "]}\n";
    return os.str();
}

// Left-to-right hardware diagram: constants in circles, adders as junction
// points, negative inputs drawn dashed.
std::string to_dot(const DataflowGraph& g) {
    std::ostringstream os;
    os << "digraph " << kernel_name(g.kernel) << " {\n  rankdir=LR;\n";
    int in_index = 0, out_index = 0;
    for (const GraphNode& n : g.nodes) {
        os << "  n" << n.id << " [";
        switch (n.kind) {
        case NodeKind::input:
            os << "shape=plaintext,label=\"x" << in_index++ << "\"";
            break;
        case NodeKind::const_mult:
            os << "shape=circle,label=\"" << n.const_label << "\"";
            break;
        case NodeKind::add:
            os << "shape=point,label=\"\"";
            break;
        case NodeKind::output:
            os << "shape=plaintext,label=\"y" << out_index++ << "\"";
            break;
        }
        os << "];\n";
    }
    for (const GraphNode& n : g.nodes)
        for (const SignedRef& ref : n.inputs)
            os << "  n" << ref.id << " -> n" << n.id
               << (ref.sign < 0 ? " [style=dashed];\n" : ";\n");
    os << "}\n";
    return os.str();
}

} // namespace

std::string export_graph(const DataflowGraph& g, ExportFormat format) {
    switch (format) {
    case ExportFormat::dot: return to_dot(g);
    case ExportFormat::json: return to_json(g);
    }
    throw std::invalid_argument("unknown export format");
}

} // namespace qmk
