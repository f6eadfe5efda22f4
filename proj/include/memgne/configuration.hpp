#pragma once

#include "memgne/multiset.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace memgne {

enum class Charge : std::uint8_t { neutral, plus, minus };

char charge_char(Charge c) noexcept;
std::optional<Charge> charge_from_char(char c) noexcept;

/// Raised for references to membranes that do not exist or a malformed tree.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pseudo-label addressing the region outside the skin.
inline constexpr std::string_view kEnvironment = "@env";

struct Membrane {
    std::string label;
    Charge charge = Charge::neutral;
    Multiset contents;
    int parent = -1; ///< index into Configuration::membranes(); -1 for the skin
    std::vector<int> children;
};

/// Instantaneous state of a P system: the membrane tree with labels, charges
/// and region contents, plus the environment surrounding the skin.
///
/// Membranes are stored flat; index 0 is the skin. Indices are stable for the
/// lifetime of a configuration and of every configuration derived from it by
/// rule application (no division or dissolution).
class Configuration {
public:
    Configuration() = default;

    /// Adds a membrane under `parent` (nullopt creates the skin; only once).
    int add_membrane(std::string label, Charge charge, Multiset contents,
                     std::optional<std::string_view> parent);

    const std::vector<Membrane>& membranes() const noexcept { return membranes_; }
    Membrane& at(int index) { return membranes_.at(static_cast<std::size_t>(index)); }
    const Membrane& at(int index) const { return membranes_.at(static_cast<std::size_t>(index)); }

    std::optional<int> find(std::string_view label) const;
    /// Throws StructuralError for unknown labels.
    int index_of(std::string_view label) const;
    Membrane& at(std::string_view label) { return at(index_of(label)); }
    const Membrane& at(std::string_view label) const { return at(index_of(label)); }

    Multiset& environment() noexcept { return environment_; }
    const Multiset& environment() const noexcept { return environment_; }

    /// Contents of a region; accepts kEnvironment.
    const Multiset& region(std::string_view label) const;

    /// Indices in tree pre-order (children in insertion order).
    std::vector<int> preorder() const;

    bool empty() const noexcept { return membranes_.empty(); }

    /// Structural equality: same tree shape, labels, charges and contents.
    friend bool operator==(const Configuration& a, const Configuration& b);

private:
    std::vector<Membrane> membranes_;
    Multiset environment_;
    std::unordered_map<std::string, int> index_;
};

} // namespace memgne
