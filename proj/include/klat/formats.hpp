#pragma once

#include <iosfwd>
#include <string>

#include "klat/family.hpp"
#include "klat/game.hpp"

namespace klat {

// Text formats for games and families; the schemas are documented with
// normative examples in docs/formats.md.

FiniteGame parse_game_text(const std::string& text);
FiniteGame load_game(const std::string& path);
void write_game(std::ostream& os, const FiniteGame& game);

GameFamily parse_family_text(const std::string& text);
GameFamily load_family(const std::string& path);

// Writes a finite-kind family with every fiber materialized inline.
void write_finite_family(std::ostream& os, const GameFamily& family);

}  // namespace klat
