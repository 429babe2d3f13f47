package com.acme.inventory.storage;

import com.acme.inventory.model.*;
import java.util.HashMap;
import java.util.Map;

// Only Item is used below; the wildcard must not drag in Sku.
public class ItemStore {
    private final Map<String, Item> items = new HashMap<>();
    private final StoreConfig config;

    public ItemStore(StoreConfig config) {
        this.config = config;
    }

    public void put(String key, Item item) {
        if (items.size() >= config.capacity) {
            throw new IllegalStateException("store full, cannot add Sku " + key);
        }
        items.put(key, item);
    }
}
