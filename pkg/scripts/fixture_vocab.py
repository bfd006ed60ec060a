"""Shared vocabulary for the fixture-data generators.

The argument tagger learns token identities, so the fixture corpus must only
use place and time expressions that also appear in the argument training
data. Both generators import these lists to keep the vocabularies aligned.
"""

# (surface tokens joined by spaces, canonical geo id)
PLACES = [
    ("California", "US-CA"),
    ("New York", "US-NY"),
    ("New York City", "US-NY"),
    ("Texas", "US-TX"),
    ("Florida", "US-FL"),
    ("Washington", "US-WA"),
    ("Michigan", "US-MI"),
    ("Illinois", "US-IL"),
    ("Ohio", "US-OH"),
    ("Arizona", "US-AZ"),
    ("New Jersey", "US-NJ"),
    ("Massachusetts", "US-MA"),
    ("Pennsylvania", "US-PA"),
    ("Colorado", "US-CO"),
    ("Georgia", "US-GA"),
    ("Italy", "IT"),
    ("Spain", "ES"),
    ("China", "CN"),
    ("Wuhan", "CN"),
    ("France", "FR"),
    ("Germany", "DE"),
    ("United Kingdom", "GB"),
    ("Iran", "IR"),
    ("South Korea", "KR"),
    ("Japan", "JP"),
    ("India", "IN"),
    ("Brazil", "BR"),
    ("Sweden", "SE"),
    ("Canada", "CA"),
    ("Australia", "AU"),
]

# (surface form, month number it should resolve to when the publishing month
# is >= that month of 2020; None marks relative phrases)
TIMES_ABSOLUTE = [
    ("January 2020", 1),
    ("February 2020", 2),
    ("March 2020", 3),
    ("April 2020", 4),
    ("May 2020", 5),
    ("January", 1),
    ("February", 2),
    ("March", 3),
    ("April", 4),
    ("May", 5),
    ("early March", 3),
    ("late April", 4),
]

TIMES_RELATIVE = ["last month", "this month"]

# trigger phrase (as it appears in text, lowercase) -> event type; a subset
# of the shipped lexicon that the fixture corpus actually uses
TRIGGERS = {
    "coronavirus": "COVID-19",
    "covid-19": "COVID-19",
    "virus": "Virus",
    "pandemic": "Pandemic",
    "outbreak": "DiseaseSpread",
    "transmission": "DiseaseSpread",
    "infections": "DiseaseSpread",
    "deaths": "Death",
    "death toll": "Death",
    "symptoms": "Symptom",
    "fever": "Symptom",
    "testing": "Testing",
    "screening": "Testing",
    "treatment": "Treatment",
    "ventilators": "Treatment",
    "hospital capacity": "AccessToHealthcare",
    "lockdown": "Lockdown",
    "stay-at-home order": "Lockdown",
    "travel ban": "TravelRestrictions",
    "border closure": "TravelRestrictions",
    "social distancing": "SocialDistancingMeasures",
    "quarantine": "IsolationOrConfinement",
    "isolation": "IsolationOrConfinement",
    "school closures": "Closures",
    "closures": "Closures",
    "travel": "Travel",
    "flights": "Travel",
    "tourism": "Travel",
    "shortages": "Shortage",
    "shortage": "Shortage",
    "unemployment": "Unemployment",
    "layoffs": "Unemployment",
    "economy": "Economy",
    "markets": "Economy",
    "recession": "EconomicCrisis",
    "panic": "FearOrPanic",
    "panic buying": "FearOrPanic",
    "fear": "FearOrPanic",
    "protests": "Conflict",
}

# Relation stories realized in the fixture corpus: (left trigger phrase,
# connective template, right trigger phrase). The connective is inserted
# verbatim between the two trigger phrases.
STORIES = [
    ("pandemic", "led to", "lockdown"),
    ("outbreak", "triggered", "panic"),
    ("lockdown", "caused", "unemployment"),
    ("coronavirus", "caused", "deaths"),
    ("lockdown", "resulted in", "layoffs"),
    ("pandemic", "caused", "shortages"),
    ("shortages", "triggered", "panic buying"),
    ("panic buying", "caused", "shortages"),
    ("travel ban", "curbed", "transmission"),
    ("lockdown", "slowed", "transmission"),
    ("quarantine", "prevented", "outbreak"),
    ("screening", "reduced", "infections"),
    ("social distancing", "reduced", "transmission"),
    ("lockdown", "preceded", "recession"),
    ("pandemic", "preceded", "unemployment"),
    ("outbreak", "fueled", "fear"),
    ("pandemic", "worsened", "shortage"),
    ("school closures", "enabled", "social distancing"),
    ("testing", "enabled", "treatment"),
    ("recession", "came after", "lockdown"),
    ("deaths", "came before", "protests"),
    ("unemployment", "exacerbated", "fear"),
    ("travel", "accelerated", "transmission"),
    ("border closure", "blocked", "travel"),
    ("isolation", "averted", "infections"),
    ("lockdown", "eased", "transmission"),
]
