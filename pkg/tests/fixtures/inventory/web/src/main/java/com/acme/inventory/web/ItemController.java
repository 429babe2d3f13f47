package com.acme.inventory.web;

import com.acme.inventory.service.InventoryService;

/*
 * Thin HTTP layer. Mentions of ItemStore in comments must be ignored.
 */
public class ItemController {
    private final InventoryService service;

    public ItemController(InventoryService service) {
        this.service = service;
    }

    public String quote(int quantity) {
        return JsonView.class.getSimpleName() + ":" + service.quote(quantity);
    }
}
