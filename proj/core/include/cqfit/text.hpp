#pragma once

#include <string>
#include <string_view>

#include "cqfit/model.hpp"

// Text formats.
//
// Instance / example: one fact `R(v1,...,vk)` per line, an optional
// `#domain v1 v2 ...` line listing values that occur in no fact, and a final
// `#answer v1 ... vk` line for examples of arity k > 0. Blank lines and lines
// starting with `%` are ignored.
//
// CQ: `q(x1,...,xk) :- R(y,z), A(y)`; whitespace-insensitive, empty body allowed.
//
// Collection: examples in the format above, each preceded by a line holding a
// single `+` (positive) or `-` (negative).
//
// Serialization is canonical: facts are sorted by their rendered text, so equal
// objects serialize identically.

namespace cqfit {

/// `R(v1,...,vk)`.
std::string to_string(const Fact& f);

Fact parse_fact(std::string_view text, std::size_t line = 1);

Instance parse_instance(std::string_view text);
Example parse_example(std::string_view text);
CQ parse_cq(std::string_view text);
LabeledCollection parse_collection(std::string_view text);

std::string serialize(const Instance& instance);
std::string serialize(const Example& example);
std::string serialize(const CQ& q);
std::string serialize(const LabeledCollection& collection);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace cqfit
