#!/usr/bin/env python3
"""Regenerates movies_200.csv, the synthetic movie fixture.

Output is deterministic (fixed seed). Two rows reproduce real films used by
the walkthrough scenario; every other title is synthetic.
"""
import csv
import random
import sys

GENRES = ["action", "adventure", "animation", "comedy", "crime", "drama",
          "fantasy", "horror", "romance", "sci-fi", "thriller"]
ADJ = ["Silent", "Broken", "Golden", "Last", "Hidden", "Crimson", "Distant",
       "Frozen", "Wild", "Electric", "Lonely", "Burning", "Endless", "Quiet"]
NOUN = ["Harbor", "Kingdom", "Road", "Summer", "Empire", "Garden", "River",
        "Machine", "Letter", "Storm", "Frontier", "Mirror", "Orchard", "Signal"]

# Fixed composition of 2007 so the walkthrough has a rich genre breakdown.
YEAR_2007 = ["fantasy"] * 5 + ["drama"] * 7 + ["comedy"] * 3 + ["action"] * 2 + ["sci-fi"]


def main(path):
    rng = random.Random(20200715)
    rows = []
    used = set()

    def title():
        while True:
            t = f"The {rng.choice(ADJ)} {rng.choice(NOUN)}"
            if rng.random() < 0.3:
                t += f" {rng.randint(2, 4)}"
            if t not in used:
                used.add(t)
                return t

    def movie(year, genre):
        duration = max(68, min(210, int(rng.gauss(101, 18))))
        budget = rng.randint(1, 300) * 1_000_000
        gross = int(budget * rng.lognormvariate(0.4, 0.9))
        vote = round(min(9.3, max(2.0, rng.gauss(6.4, 1.0))), 1)
        return [title(), year, genre, duration, budget, gross, vote]

    for g in YEAR_2007:
        rows.append(movie(2007, g))
    rows.append(["Star Wars: Episode VII - The Force Awakens", 2015, "sci-fi",
                 138, 245000000, 2068223624, 7.9])
    rows.append(["The Chronicles of Narnia: Prince Caspian", 2008, "fantasy",
                 150, 225000000, 419665568, 6.5])
    rows.append(["Crouching Tiger, Hidden Dragon", 2000, "action",
                 120, 17000000, 213525736, 7.9])
    rows.append(['The "Unseen" Reel', 1953, "drama", 92, 1000000, 2400000, 6.1])
    while len(rows) < 200:
        year = rng.randint(1920, 2019)
        if year == 2007:
            continue
        genre = rng.choice(GENRES)
        # Fantasy peaks below the 2007 count in every other year.
        if genre == "fantasy" and sum(1 for r in rows if r[1] == year and r[2] == "fantasy") >= 3:
            genre = "drama"
        rows.append(movie(year, genre))
    rng.shuffle(rows)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["title", "year", "genre", "duration", "budget", "gross", "avg_vote"])
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "movies_200.csv")
