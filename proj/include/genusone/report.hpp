#pragma once

#include "genusone/catalog.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genusone {

// Input file for model-based commands.
struct ModelFile {
    unsigned p = 0;
    std::map<std::string, std::vector<std::string>> coeffs; // "a1".."a6", ascending powers of t
    std::map<std::string, long> params;

    static ModelFile parse(const std::string& json_text); // throws DomainError, unknown keys included
    std::string to_json() const;
    WeierstrassModel model() const;
};

struct PlaceRecord {
    std::string place;
    int degree = 1;
    bool classified = true;
    std::string reason;
    std::string kodaira, dynkin;
    int vdisc = 0, b = 1, e = 0, delta = 0;
    std::vector<long> disc;
    bool operator==(const PlaceRecord&) const = default;
};

struct MWRecord {
    std::string config;
    bool embeddable = false;
    std::string reason;
    std::vector<std::string> types; // "rank 0, Z/3"
    std::vector<long> disc;
    long embeddings = 0;
    bool exhaustive = false;
    bool operator==(const MWRecord&) const = default;
};

struct CheckRecord {
    std::string name, status, detail;
    bool operator==(const CheckRecord&) const = default;
};

struct VerdictRecord {
    std::string subject;
    unsigned p = 0;
    std::map<std::string, long> params;
    bool errata = false;
    std::vector<std::string> fibers;
    std::vector<CheckRecord> checks;
    std::string status;
    bool operator==(const VerdictRecord&) const = default;
};

// Generic labelled row for list-shaped outputs (invariants, candidates, subdiagrams, ...).
struct Item {
    std::string label;
    std::map<std::string, std::string> attrs;
    bool operator==(const Item&) const = default;
};

struct Report {
    int version = 1;
    std::string command;
    std::uint64_t seed = 0;
    std::optional<std::string> model;
    std::vector<PlaceRecord> places;
    std::optional<int> euler_sum;
    std::optional<bool> extremal;
    std::vector<std::string> notes;
    std::optional<MWRecord> mw;
    std::vector<VerdictRecord> verdicts;
    std::vector<Item> items;
    std::string status = "pass"; // pass, fail, inconclusive

    bool operator==(const Report&) const = default;
    std::string to_json() const; // sorted keys, two-space indent, trailing newline
    static Report from_json(const std::string& text);
    std::string to_text() const;
    int exit_code() const; // 0 pass, 1 fail, 2 inconclusive
};

PlaceRecord place_record(const LocalFiberData& d);
MWRecord mw_record(const MWReport& r);
VerdictRecord verdict_record(const Verdict& v);
// Worst of the statuses: fail > inconclusive > pass.
std::string combine_status(const std::string& a, const std::string& b);

} // namespace genusone
