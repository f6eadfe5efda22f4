#include "memgne/configuration.hpp"

#include <functional>

namespace memgne {

char charge_char(Charge c) noexcept
{
    switch (c) {
    case Charge::plus: return '+';
    case Charge::minus: return '-';
    default: return '0';
    }
}

std::optional<Charge> charge_from_char(char c) noexcept
{
    switch (c) {
    case '0': return Charge::neutral;
    case '+': return Charge::plus;
    case '-': return Charge::minus;
    default: return std::nullopt;
    }
}

int Configuration::add_membrane(std::string label, Charge charge, Multiset contents,
                                std::optional<std::string_view> parent)
{
    if (index_.count(label)) throw StructuralError("duplicate membrane label '" + label + "'");
    if (label == kEnvironment) throw StructuralError("label '@env' is reserved");
    int parent_index = -1;
    if (parent) {
        parent_index = index_of(*parent);
    } else if (!membranes_.empty()) {
        throw StructuralError("configuration already has a skin membrane");
    }
    auto idx = static_cast<int>(membranes_.size());
    membranes_.push_back(Membrane{label, charge, std::move(contents), parent_index, {}});
    if (parent_index >= 0) at(parent_index).children.push_back(idx);
    index_.emplace(std::move(label), idx);
    return idx;
}

std::optional<int> Configuration::find(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Configuration::index_of(std::string_view label) const
{
    if (auto i = find(label)) return *i;
    throw StructuralError("unknown membrane label '" + std::string(label) + "'");
}

const Multiset& Configuration::region(std::string_view label) const
{
    if (label == kEnvironment) return environment_;
    return at(label).contents;
}

std::vector<int> Configuration::preorder() const
{
    std::vector<int> out;
    if (membranes_.empty()) return out;
    out.reserve(membranes_.size());
    std::function<void(int)> walk = [&](int i) {
        out.push_back(i);
        for (int c : at(i).children) walk(c);
    };
    walk(0);
    return out;
}

bool operator==(const Configuration& a, const Configuration& b)
{
    if (a.membranes_.size() != b.membranes_.size()) return false;
    if (!(a.environment_ == b.environment_)) return false;
    if (a.membranes_.empty()) return true;
    std::function<bool(int, int)> same = [&](int x, int y) {
        const auto& ma = a.at(x);
        const auto& mb = b.at(y);
        if (ma.label != mb.label || ma.charge != mb.charge || !(ma.contents == mb.contents)) return false;
        if (ma.children.size() != mb.children.size()) return false;
        for (std::size_t i = 0; i < ma.children.size(); ++i)
            if (!same(ma.children[i], mb.children[i])) return false;
        return true;
    };
    return same(0, 0);
}

} // namespace memgne
