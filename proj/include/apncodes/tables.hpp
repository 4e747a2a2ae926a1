#pragma once

#include <apncodes/codes.hpp>
#include <apncodes/congruence.hpp>
#include <apncodes/exp_sums.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace apncodes {

enum class TableId { WD_I, WD_II, WD_III, T0_DIST, PAIR_DIST, T_ODD, T_EVEN, S_ODD, S_EVEN, THM5_ODD, THM5_EVEN, COR2 };

inline constexpr TableId kAllTables[] = {TableId::WD_I,   TableId::WD_II,     TableId::WD_III,  TableId::T0_DIST,
                                         TableId::PAIR_DIST, TableId::T_ODD,  TableId::T_EVEN,  TableId::S_ODD,
                                         TableId::S_EVEN, TableId::THM5_ODD,  TableId::THM5_EVEN, TableId::COR2};

std::string_view table_name(TableId id);     // "WD-I"
std::string_view table_caption(TableId id);  // "Weight distribution I"
std::optional<TableId> parse_table_id(std::string_view name);

// e mod (p-1): 1, 1 + (p-1)/2, or neither.
enum class ResidueClass { One, OnePlusHalf, Other };
std::string_view residue_class_name(ResidueClass c);

struct ExponentCertificate {
    std::uint64_t e = 0;
    std::uint64_t coset_rep = 0;
    std::optional<Witness> cc_witness;
    std::optional<Witness> thm1i_witness;
    unsigned parity = 0;
    ResidueClass residue_class = ResidueClass::Other;
    std::vector<TableId> table_ids;  // every applicable weight table, WD-I first

    bool empty() const { return !cc_witness && !thm1i_witness; }
    std::optional<TableId> table_id() const {
        return table_ids.empty() ? std::nullopt : std::optional<TableId>(table_ids.front());
    }
    nlohmann::json to_json() const;
};

ExponentCertificate classify_exponent(std::uint32_t p, unsigned m, std::uint64_t e);

struct CcCensus {
    std::vector<ExponentCertificate> representatives;  // one per coset with a Congruence Condition witness
    std::uint64_t exponent_count = 0;                  // exponents in those cosets
    std::vector<std::uint64_t> thm1i_only;             // coset representatives certified only by the even-e rule
    std::uint64_t two_phi = 0;                         // 2 phi(m)
    std::uint64_t m_plus_two_phi = 0;                  // m + 2 phi(m)
};

CcCensus enumerate_cc_exponents(std::uint32_t p, unsigned m);

struct ApnExponent {
    std::uint64_t e = 0;
    unsigned family = 0;  // 1..5
    std::uint64_t companion_d = 0;
    ExponentCertificate certificate;
};

// The five p = 3 families that apply to m, reduced mod 3^m - 1.
std::vector<ApnExponent> apn_exponent_families(unsigned m);

using Table = std::variant<WeightDist, ValueDist, PairDist>;

// Closed-form rows evaluated exactly, "+-" rows expanded, zero rows dropped,
// equal values merged. HypothesisViolated when (p, m) is outside the table's range.
Table generate_table(TableId id, std::uint32_t p, unsigned m);

// Weight table for C(1,e) or C(1,e,s) chosen from the certificate; nullopt
// when no table applies.
std::optional<TableId> weight_table_for(const ExponentCertificate& cert, bool with_s);

}  // namespace apncodes
