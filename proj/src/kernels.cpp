#include "qmk/kernels.hpp"

namespace qmk {

const char* kernel_name(KernelId id) {
    switch (id) {
    case KernelId::direct: return "direct";
    case KernelId::sq: return "sq";
    case KernelId::qt: return "qt";
    case KernelId::sqt: return "sqt";
    }
    throw std::invalid_argument("bad kernel id");
}

KernelId parse_kernel(const std::string& name) {
    if (name == "direct") return KernelId::direct;
    if (name == "sq") return KernelId::sq;
    if (name == "qt") return KernelId::qt;
    if (name == "sqt") return KernelId::sqt;
    throw std::invalid_argument("unknown kernel: " + name);
}

} // namespace qmk
