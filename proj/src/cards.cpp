#include "ripple_zkp/cards.hpp"

#include <stdexcept>

namespace ripple {

Sequence encode(std::size_t x, std::size_t y) {
  if (y == 0) throw std::invalid_argument("encoding length must be positive");
  if (x > y)
    throw std::invalid_argument("cannot encode " + std::to_string(x) + " in " +
                                std::to_string(y) + " cards");
  Sequence seq(y, Suit::Club);
  if (x > 0) seq[x - 1] = Suit::Heart;
  return seq;
}

std::optional<std::size_t> decode(std::span<const Suit> seq) {
  std::size_t position = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] != Suit::Heart) continue;
    if (position != 0) return std::nullopt;
    position = i + 1;
  }
  return position;
}

std::string to_string(std::span<const Suit> seq) {
  std::string out;
  out.reserve(seq.size());
  for (Suit s : seq) out.push_back(s == Suit::Heart ? 'H' : 'C');
  return out;
}

Sequence sequence_from_string(std::string_view text) {
  Sequence seq;
  seq.reserve(text.size());
  for (char c : text) {
    if (c == 'H') seq.push_back(Suit::Heart);
    else if (c == 'C') seq.push_back(Suit::Club);
    else throw std::invalid_argument("card face must be 'C' or 'H'");
  }
  return seq;
}

Sequence CardInspector::faces(std::span<const Card> cards) {
  Sequence out;
  out.reserve(cards.size());
  for (const Card& c : cards) out.push_back(c.face_);
  return out;
}

std::vector<CardId> CardInspector::ids(std::span<const Card> cards) {
  std::vector<CardId> out;
  out.reserve(cards.size());
  for (const Card& c : cards) out.push_back(c.id_);
  return out;
}

std::vector<Card> CardSupply::mint(std::span<const Suit> faces, CardRole role) {
  std::vector<Card> out;
  out.reserve(faces.size());
  for (Suit s : faces) out.push_back(Card(s, next_id_++));
  if (role == CardRole::Grid) {
    grid_ += faces.size();
  } else {
    live_aux_ += faces.size();
    if (live_aux_ > peak_aux_) peak_aux_ = live_aux_;
  }
  return out;
}

void CardSupply::retire_auxiliary(std::size_t count) {
  if (count > live_aux_) throw std::logic_error("retiring more auxiliary cards than are live");
  live_aux_ -= count;
}

}  // namespace ripple
