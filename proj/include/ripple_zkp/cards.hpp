#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ripple {

enum class Suit : std::uint8_t { Club, Heart };

/// Card faces in order. E_y(x) is the length-y sequence whose only Heart sits at
/// position x; E_y(0) has no Heart.
using Sequence = std::vector<Suit>;

/// Throws std::invalid_argument when x > y or y == 0.
Sequence encode(std::size_t x, std::size_t y);

/// Position (1-based) of the single Heart, 0 when there is none, nullopt when the
/// sequence holds two or more Hearts.
std::optional<std::size_t> decode(std::span<const Suit> seq);

/// 'C' / 'H' per card.
std::string to_string(std::span<const Suit> seq);
Sequence sequence_from_string(std::string_view text);

using CardId = std::uint32_t;

/// A physical card. Its face is not part of the public surface: the engine reads
/// it when a reveal happens and tests read it through CardInspector.
class Card {
 public:
  CardId id() const noexcept { return id_; }

 private:
  friend class CardSupply;
  friend class Matrix;
  friend struct CardInspector;

  Card(Suit face, CardId id) : face_(face), id_(id) {}

  Suit face_;
  CardId id_;
};

/// Private side-channel into card faces. Only audit code and tests use this; the
/// protocol itself goes through reveals.
struct CardInspector {
  static Suit face(const Card& card) noexcept { return card.face_; }
  static Sequence faces(std::span<const Card> cards);
  static std::vector<CardId> ids(std::span<const Card> cards);
};

enum class CardRole { Grid, Auxiliary };

/// Mints cards with unique ids and keeps a live/peak count of auxiliary cards.
class CardSupply {
 public:
  std::vector<Card> mint(std::span<const Suit> faces, CardRole role);
  void retire_auxiliary(std::size_t count);

  std::size_t grid_cards() const noexcept { return grid_; }
  std::size_t live_auxiliary() const noexcept { return live_aux_; }
  std::size_t peak_auxiliary() const noexcept { return peak_aux_; }

 private:
  CardId next_id_ = 1;
  std::size_t grid_ = 0;
  std::size_t live_aux_ = 0;
  std::size_t peak_aux_ = 0;
};

}  // namespace ripple
