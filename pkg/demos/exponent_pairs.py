"""Exponent pairs from A/B words and a small smooth-family scan."""
from smoothchar import bounds_lab as bl

for word in ["B", "AB", "BA", "ABA", "A" * 3 + "B"]:
    print(f"{word:6s} {bl.eval_word(word)}")

cfg = bl.FamilyConfig(q_max=10**5, count=8, char_cap=256, seed=1)
rows = bl.scan_family(cfg)
print(bl.rows_to_csv(rows))
print("fitted exponent:", round(bl.fit_exponent(rows), 3))
