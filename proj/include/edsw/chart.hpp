#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edsw {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// A fixed coordinate chart: ordered coordinate names followed by parameter
// names (symbols treated as transcendental constants, e.g. the wave speed).
class Chart {
public:
    static ChartPtr make(std::vector<std::string> coords, std::vector<std::string> params = {});

    std::size_t dim() const { return ncoords_; }            // coordinates only
    std::size_t nsyms() const { return names_.size(); }      // coordinates + parameters

    const std::string& symbol(std::size_t i) const { return names_.at(i); }
    std::vector<std::string> coords() const;
    std::vector<std::string> params() const;

    std::optional<std::size_t> find(std::string_view name) const;
    bool is_coord(std::size_t sym) const { return sym < ncoords_; }

    bool same(const Chart& other) const { return names_ == other.names_ && ncoords_ == other.ncoords_; }

private:
    Chart(std::vector<std::string> names, std::size_t ncoords)
        : names_(std::move(names)), ncoords_(ncoords) {}
    std::vector<std::string> names_;
    std::size_t ncoords_;
};

// Programming-error guard: operands of symbolic arithmetic must live on the
// same chart (structurally equal).
void ensure_same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace edsw
